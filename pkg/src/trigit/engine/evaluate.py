"""Query interpretation and encoding checks over a :class:`ProjectModel`."""
from __future__ import annotations

from dataclasses import dataclass

from .. import ir
from ..buildconfig import BuildConfigModel, JavaVersion
from ..frontend import Category, EncodingError, Kind, TrigItUnit
from ..model import ClassModel, FieldModel, JavaFileModel, MethodModel, Modifiers, ProjectModel


class EvalError(Exception):
    pass


@dataclass(frozen=True)
class TriggerResult:
    unit: str
    class_name: str
    satisfied: bool
    explanation: str
    evidence: tuple[str, int] | None = None
    status: str = "evaluated"  # evaluated | forced | unevaluable

    @property
    def state(self) -> str:
        if self.status in ("unevaluable", "forced"):
            return self.status
        return "satisfied" if self.satisfied else "unsatisfied"


def format_explanation(reason: str, evidence: tuple[str, int] | None) -> str:
    if evidence is None:
        return reason
    return f"{reason}; file: {evidence[0]}, line: {evidence[1]}"


@dataclass(frozen=True)
class _Truth:
    value: bool
    reason: str
    evidence: tuple[str, int] | None = None


def _kind_word(element) -> str:
    if isinstance(element, ClassModel):
        return "class"
    if isinstance(element, MethodModel):
        return "constructor" if element.is_constructor else "method"
    if isinstance(element, FieldModel):
        return "field"
    if isinstance(element, JavaFileModel):
        return "file"
    if isinstance(element, BuildConfigModel):
        return "build config"
    return type(element).__name__


def _evidence_of(element) -> tuple[str, int] | None:
    if isinstance(element, ClassModel):
        return (element.path, element.span.start_line)
    if isinstance(element, (MethodModel, FieldModel)):
        return (element.span.file, element.span.start_line)
    if isinstance(element, BuildConfigModel):
        return element.version_location
    return None


def _name_of(element) -> str:
    if isinstance(element, (JavaFileModel, BuildConfigModel)):
        return element.path
    if isinstance(element, (ClassModel, MethodModel, FieldModel)):
        return element.name
    raise EvalError(f"{type(element).__name__} has no name")


def _modifiers_of(element) -> Modifiers:
    if isinstance(element, Modifiers):
        return element
    if isinstance(element, (ClassModel, MethodModel, FieldModel)):
        return element.modifiers
    raise EvalError(f"{type(element).__name__} has no modifiers")


_PRED_FUN = {
    "isPublic": lambda m: m.visibility == "public",
    "isProtected": lambda m: m.visibility == "protected",
    "isPrivate": lambda m: m.visibility == "private",
    "isStatic": lambda m: m.is_static,
    "isFinal": lambda m: m.is_final,
}
_PRED_WORD = {"isPublic": "public", "isProtected": "protected", "isPrivate": "private",
              "isStatic": "static", "isFinal": "final"}


class Evaluator:
    """Pure interpreter; never mutates the model it is given."""

    def __init__(self, model: ProjectModel, units: dict[tuple[str, str], TrigItUnit] | None = None):
        self.model = model
        self.units = units or {}
        self._memo: dict[tuple[str, str], _Truth] = {}
        self._active: set[tuple[str, str]] = set()

    # -- values ----------------------------------------------------------

    def value(self, q: ir.Query):
        if isinstance(q, ir.Literal):
            if q.kind == "number" and isinstance(q.value, str):
                return _number(q.value)
            return q.value
        if isinstance(q, ir.Source):
            if q.kind == "classes":
                return list(self.model.classes)
            if q.kind == "javaFiles":
                return list(self.model.java_files)
            if q.kind == "buildConfigs":
                return list(self.model.build_configs)
            if q.kind == "context":
                cls = self.model.find_class(q.context)
                if cls is None:
                    raise EvalError(f"enclosing class {q.context} not in model")
                return cls
        if isinstance(q, ir.Accessor):
            return self.accessor(q)
        if isinstance(q, ir.StreamOp):
            return self.stream_op(q)
        if q.type == ir.BOOLEAN:
            return self.truth(q).value
        raise EvalError(f"cannot evaluate {type(q).__name__}")

    def java_version(self) -> BuildConfigModel:
        for cfg in self.model.build_configs:
            return cfg
        raise EvalError("no build configuration declares a Java version")

    def accessor(self, q: ir.Accessor):
        if q.target is None:
            if q.name == "getClass":
                cls = self.model.find_class(q.arg.value)
                if cls is None:
                    raise EvalError(f"class {q.arg.value} not found")
                return cls
            if q.name == "getJavaVersion":
                return self.java_version()
            raise EvalError(f"accessor {q.name} needs a receiver")
        recv = self.value(q.target)
        name = q.name
        if name == "getName":
            return _name_of(recv)
        if name == "getModifiers":
            return _modifiers_of(recv)
        if isinstance(recv, ClassModel):
            if name == "getFields":
                return list(recv.fields)
            if name == "getMethods":
                return list(recv.methods)
            if name in ("getMethod", "getField"):
                member = recv.get_method(q.arg.value) if name == "getMethod" else recv.get_field(q.arg.value)
                if member is None:
                    kind = "method" if name == "getMethod" else "field"
                    raise EvalError(f"{kind} {q.arg.value} not found in class {recv.name}")
                return member
        if isinstance(recv, JavaFileModel) and name == "getClasses":
            return [c for c in self.model.classes if c.qualified_name in recv.classes]
        if isinstance(recv, BuildConfigModel) and name == "getJavaVersion":
            return recv
        raise EvalError(f"{name} is not valid on {type(recv).__name__}")

    def _apply_accessor(self, element, name: str):
        if name == "getName":
            return _name_of(element)
        if name == "getModifiers":
            return _modifiers_of(element)
        if name == "getFields" and isinstance(element, ClassModel):
            return list(element.fields)
        if name == "getMethods" and isinstance(element, ClassModel):
            return list(element.methods)
        if name == "getClasses" and isinstance(element, JavaFileModel):
            return [c for c in self.model.classes if c.qualified_name in element.classes]
        if name == "getJavaVersion" and isinstance(element, BuildConfigModel):
            return element
        raise EvalError(f"{name} is not valid on {type(element).__name__}")

    def stream_op(self, q: ir.StreamOp):
        items = self.value(q.target)
        if q.op == "count":
            return len(items)
        if q.op == "filter":
            fn = _PRED_FUN[q.arg.value]
            return [e for e in items if fn(_modifiers_of(e))]
        if q.op == "map":
            out = []
            for e in items:
                v = self._apply_accessor(e, q.arg.value)
                if isinstance(v, list):
                    out.extend(v)
                else:
                    out.append(v)
            return out
        if q.op == "findAny":
            for e in items:
                if _name_of(e) == q.arg.value:
                    return e
            return None
        if q.op == "anyMatch":
            return self.truth(q).value
        raise EvalError(f"unknown stream operation {q.op}")

    # -- truth with explanations --------------------------------------------

    def truth(self, q: ir.Query) -> _Truth:
        if isinstance(q, ir.Logic):
            if q.op == "not":
                inner = self.truth(q.operands[0])
                return _Truth(not inner.value, inner.reason, inner.evidence)
            parts = [self.truth(o) for o in q.operands]
            if q.op == "and":
                false = [p for p in parts if not p.value]
                if false:
                    return false[0]
                return _Truth(True, " and ".join(p.reason for p in parts),
                              next((p.evidence for p in parts if p.evidence), None))
            true = [p for p in parts if p.value]
            if true:
                return true[0]
            return _Truth(False, " and ".join(p.reason for p in parts),
                          next((p.evidence for p in parts if p.evidence), None))
        if isinstance(q, ir.Literal):
            return _Truth(bool(q.value), f"constant {str(q.value).lower()}")
        if isinstance(q, ir.TriggerRef):
            return self.trigger_ref(q)
        if isinstance(q, ir.Compare):
            a, b = self.value(q.left), self.value(q.right)
            ops = {"==": a == b, "!=": a != b}
            if q.op not in ops:
                ops = {"<": a < b, ">": a > b, "<=": a <= b, ">=": a >= b}
            val = ops[q.op]
            sym = q.op if val else {"==": "!=", "!=": "==", "<": ">=", ">": "<=",
                                    "<=": ">", ">=": "<"}[q.op]
            return _Truth(val, f"{_show(a)} {sym} {_show(b)}")
        if isinstance(q, ir.Accessor) and q.name == "hasClass":
            return self.has_class(q.arg.value)
        if isinstance(q, ir.StreamOp) and q.op == "anyMatch":
            items = self.value(q.target)
            fn = _PRED_FUN[q.arg.value]
            for e in items:
                if fn(_modifiers_of(e)):
                    return _Truth(True, f"{_kind_word(e)} {_name_of(e)} is {_PRED_WORD[q.arg.value]}",
                                  _evidence_of(e))
            return _Truth(False, f"no element is {_PRED_WORD[q.arg.value]}")
        if isinstance(q, ir.Predicate):
            return self.predicate(q)
        raise EvalError(f"{type(q).__name__} is not a boolean query")

    def has_class(self, name: str) -> _Truth:
        for c in self.model.classes:
            if c.name == name:
                return _Truth(True, f"class {name} found", _evidence_of(c))
        return _Truth(False, f"class {name} not found")

    def predicate(self, q: ir.Predicate) -> _Truth:
        if q.name == "isPresent":
            found = self.value(q.target)
            what = "element"
            if isinstance(q.target, ir.StreamOp) and q.target.arg is not None:
                elem = ir.element_type(q.target.type) or "element"
                what = f"{elem.lower()} {q.target.arg.value}"
            if found is None:
                return _Truth(False, f"{what} not found")
            return _Truth(True, f"{what} found", _evidence_of(found))
        if q.name in ("greaterEqualThan", "equals") and q.target.type == ir.VERSION:
            cfg = self.value(q.target)
            other = self.value(q.arg)
            mine = cfg.java_version if isinstance(cfg, BuildConfigModel) else cfg
            evidence = cfg.version_location if isinstance(cfg, BuildConfigModel) else None
            if q.name == "greaterEqualThan":
                ok = mine.greater_equal_than(other)
                sym = ">=" if ok else "<"
            else:
                ok = mine.major == other.major
                sym = "==" if ok else "!="
            return _Truth(ok, f"Java version {mine} {sym} {other}", evidence)
        if q.name == "equals":
            a, b = self.value(q.target), self.value(q.arg)
            ok = a == b
            return _Truth(ok, f"{_show(a)} {'==' if ok else '!='} {_show(b)}")
        element = self.value(q.target)
        mods = _modifiers_of(element)
        ok = _PRED_FUN[q.name](mods)
        if isinstance(element, Modifiers):
            subject = "modifiers"
        else:
            subject = f"{_kind_word(element)} {_name_of(element)}"
        word = _PRED_WORD[q.name]
        if ok:
            reason = f"{subject} is {word}"
        elif q.name in ("isPublic", "isProtected", "isPrivate"):
            reason = f"{subject} is not {word} ({mods.visibility})"
        else:
            reason = f"{subject} is not {word}"
        return _Truth(ok, reason, _evidence_of(element))

    def trigger_ref(self, q: ir.TriggerRef) -> _Truth:
        key = (q.class_name, q.name)
        if key in self._memo:
            return self._memo[key]
        unit = self.units.get(key)
        if unit is None:
            raise EvalError(f"trigger {q.name} is not compiled")
        if key in self._active:
            raise EvalError(f"cyclic trigger reference through {q.name}")
        self._active.add(key)
        try:
            t = self.truth(unit.query)
        finally:
            self._active.discard(key)
        self._memo[key] = t
        return t


def _number(text: str):
    t = text.rstrip("lLfFdD") if not text.lower().startswith("0x") else text.rstrip("lL")
    try:
        return int(t, 0)
    except ValueError:
        return float(t)


def _show(v) -> str:
    if isinstance(v, str):
        return repr(v)
    if isinstance(v, bool):
        return str(v).lower()
    if isinstance(v, JavaVersion):
        return str(v)
    return str(v)


def eval_query(query: ir.Query, model: ProjectModel, units=None, unit_name: str = "",
               class_name: str = "") -> TriggerResult:
    """Evaluate a compiled boolean query; the model is never modified."""
    t = Evaluator(model, units).truth(query)
    return TriggerResult(unit_name, class_name, t.value, format_explanation(t.reason, t.evidence),
                         t.evidence)


# -- encoding checks ------------------------------------------------------------

def _fixed_class(q: ir.Query, model: ProjectModel):
    """Class a selector chain is pinned to, or None when it is not fixed."""
    if isinstance(q, ir.Source) and q.kind == "context":
        return model.find_class(q.context), q.context
    if isinstance(q, ir.Accessor) and q.target is None and q.name == "getClass":
        return model.find_class(q.arg.value), q.arg.value
    return None


def check_encoding(unit: TrigItUnit, model: ProjectModel) -> list[EncodingError]:
    """Resolve every fixed-name selector; existence tests are exempt."""
    errors: list[EncodingError] = []

    def missing(what: str, span):
        errors.append(EncodingError(unit.name, span or unit.span, Category.MISSING_REFERENT,
                                    f"{what} does not exist"))

    for q in ir.walk(unit.query):
        if isinstance(q, ir.Accessor):
            if q.target is None and q.name == "getClass":
                if model.find_class(q.arg.value) is None:
                    missing(f"class {q.arg.value}", q.arg.span or q.span)
            elif q.target is None and q.name == "getJavaVersion":
                if not model.build_configs:
                    missing("build configuration with a Java version", q.span)
            elif q.name in ("getMethod", "getField") and q.target is not None:
                pinned = _fixed_class(q.target, model)
                if pinned is None or pinned[0] is None:
                    continue
                cls = pinned[0]
                kind = "method" if q.name == "getMethod" else "field"
                found = cls.get_method(q.arg.value) if kind == "method" else cls.get_field(q.arg.value)
                if found is None:
                    missing(f"{kind} {q.arg.value} in class {cls.name}", q.arg.span or q.span)
        elif isinstance(q, ir.Source) and q.kind == "context":
            if model.find_class(q.context) is None:
                missing(f"class {q.context}", q.span)
    if unit.kind is Kind.ACTION:
        for step in unit.actions:
            if not isinstance(step, ir.ActionStep):
                continue
            sel = step.selector
            cls = model.find_class(sel.class_name)
            if cls is None:
                missing(f"class {sel.class_name}", step.span)
                continue
            if sel.member_kind == "method" and cls.get_method(sel.member_name) is None:
                missing(f"method {sel.member_name} in class {cls.name}", step.span)
            elif sel.member_kind == "field" and cls.get_field(sel.member_name) is None:
                missing(f"field {sel.member_name} in class {cls.name}", step.span)
    return errors
