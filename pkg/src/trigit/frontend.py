"""Discovery, validation, rewriting and compilation of ``@TrigItMethod``s."""
from __future__ import annotations

import enum
from dataclasses import dataclass, field

from . import ir
from .buildconfig import JAVA_CONSTANTS
from .model import TRIGIT_ANNOTATION
from .syntax import Node, Span, Text, Token
from .syntax.parser import call_args, call_target, if_parts

API_ROOT = "TrigIt"
PRINT_ROOT = "System"


class Kind(enum.Enum):
    TRIGGER = "trigger"
    ACTION = "action"


class Category(str, enum.Enum):
    BAD_SIGNATURE = "BAD_SIGNATURE"
    BAD_BODY_SHAPE = "BAD_BODY_SHAPE"
    UNKNOWN_API = "UNKNOWN_API"
    MISSING_REFERENT = "MISSING_REFERENT"
    AMBIGUOUS = "AMBIGUOUS"


@dataclass(frozen=True)
class EncodingError:
    unit: str
    span: Span
    category: Category
    message: str

    @property
    def file(self) -> str:
        return self.span.file

    @property
    def line(self) -> int:
        return self.span.start_line

    def __str__(self):
        return f"{self.file}:{self.line}: {self.category.value} in {self.unit}: {self.message}"


@dataclass(frozen=True)
class GuardSite:
    file: str
    span: Span
    trigger: str
    negated: bool
    has_else: bool
    then_span: Span
    else_span: Span | None = None
    node: Node | None = field(default=None, compare=False, repr=False)


@dataclass
class TrigItUnit:
    name: str
    class_name: str
    kind: Kind
    query: ir.Query
    actions: list = field(default_factory=list)
    diagnostics: list[str] = field(default_factory=list)
    span: Span | None = None
    guard_sites: list[GuardSite] = field(default_factory=list)
    method: Node | None = field(default=None, repr=False)

    @property
    def file(self) -> str:
        return self.span.file

    @property
    def key(self) -> tuple[str, str]:
        return (self.class_name, self.name)


# -- collection -----------------------------------------------------------

def is_trigit_method(node: Node) -> bool:
    return node.kind == "MethodDecl" and TRIGIT_ANNOTATION in node.annotations


def _classes_with_prefix(cls: Node, prefix: str):
    qname = f"{prefix}.{cls.name}" if prefix else cls.name
    yield qname, cls
    for m in cls.members:
        if m.kind == "ClassDecl":
            yield from _classes_with_prefix(m, qname)


def iter_classes(ast: Node):
    """(qualified name, ClassDecl) for every class in a unit, outer first."""
    pkg = ast.child("PackageDecl")
    prefix = pkg.name if pkg is not None else ""
    for cls in ast.children_of("ClassDecl"):
        yield from _classes_with_prefix(cls, prefix)


def collect_trigit_methods(asts: dict[str, Node]) -> list[tuple[Node, Node]]:
    """Every annotated method as (class, method), in (path, source) order."""
    out = []
    for path in sorted(asts):
        for _, cls in iter_classes(asts[path]):
            for m in cls.members:
                if is_trigit_method(m):
                    out.append((cls, m))
    return out


# -- validation -----------------------------------------------------------

def _then_statements(stmt: Node) -> list[Node]:
    if stmt.kind == "Block":
        return stmt.children
    return [stmt]


def _is_call_stmt(stmt: Node) -> bool:
    return stmt.kind == "ExprStmt" and stmt.children[0].kind == "CallChain"


def validate_trigit_method(method: Node) -> list[EncodingError]:
    """Check the shape rules; returns every violation (empty when valid)."""
    name = method.name
    errors = []

    def err(cat, msg, span=None):
        errors.append(EncodingError(name, span or method.span, cat, msg))

    if method.params:
        err(Category.BAD_SIGNATURE, "TrigIt methods take no parameters", method.params[0].span)
    throws = method.typeref("throws")
    if throws is not None:
        err(Category.BAD_SIGNATURE, "TrigIt methods have no throws clause", throws.span)
    rtype = method.typeref("return")
    rtext = rtype.attrs["text"] if rtype is not None else ""
    if rtext not in ("boolean", "void"):
        err(Category.BAD_SIGNATURE, f"return type must be boolean or void, not {rtext or 'none'!r}",
            rtype.span if rtype is not None else None)
        return errors
    body = method.body
    if body is None:
        err(Category.BAD_BODY_SHAPE, "TrigIt method has no body")
        return errors
    stmts = body.children
    if rtext == "boolean":
        if len(stmts) != 1 or stmts[0].kind != "ReturnStmt" or not stmts[0].children:
            err(Category.BAD_BODY_SHAPE, "trigger body must be a single return of a query expression",
                body.span)
        return errors
    if not stmts or stmts[0].kind != "IfStmt":
        err(Category.BAD_BODY_SHAPE, "action body must start with an if statement",
            stmts[0].span if stmts else body.span)
        return errors
    if len(stmts) > 1:
        err(Category.BAD_BODY_SHAPE, "statements after the leading if belong in its then block",
            stmts[1].span)
    _, then, other = if_parts(stmts[0])
    if other is not None:
        err(Category.BAD_BODY_SHAPE, "the leading if of an action may not have an else branch",
            other.span)
    for s in _then_statements(then):
        if not _is_call_stmt(s):
            err(Category.BAD_BODY_SHAPE,
                "then block may contain only transformation and print statements", s.span)
    return errors


# -- Fig. 5 stripping -------------------------------------------------------

def strip_for_evaluation(cls: Node, diagnostics: list[str] | None = None) -> Node:
    """Reduce a class to its ``@TrigItMethod`` members.

    Static blocks, fields, nested classes and unannotated methods are dropped
    outside-in, so a nested class disappears together with anything inside it.
    """
    parts = []
    changed = False
    for p in cls.parts:
        if isinstance(p, Node) and p.kind in ("StaticBlock", "FieldDecl", "ClassDecl", "MethodDecl"):
            if is_trigit_method(p):
                parts.append(p)
                continue
            changed = True
            if p.kind == "ClassDecl" and diagnostics is not None:
                for _, inner in _classes_with_prefix(p, cls.name):
                    for m in inner.members:
                        if is_trigit_method(m):
                            diagnostics.append(
                                f"{m.span.file}:{m.span.start_line}: TrigIt method {m.name} in "
                                f"nested class {inner.name} is unreachable")
            continue
        parts.append(p)
    return cls.replace(parts=parts) if changed else cls


# -- name substitution ------------------------------------------------------

def chain_root(node: Node) -> Node:
    while node.kind in ("CallChain", "MemberAccess"):
        if node.kind == "CallChain" and not node.attrs.get("has_target"):
            return node
        node = node.children[0]
    return node


def _leading_trivia(node: Node, tokens: list[Token] | None) -> str:
    for p in node.parts:
        if isinstance(p, int):
            return tokens[p].trivia_text if tokens is not None else ""
        if isinstance(p, Text):
            return ""
        lead = _leading_trivia(p, tokens)
        if lead or p.parts:
            return lead
    return ""


def _name_literal(node: Node, name: str, tokens) -> Node:
    text = _leading_trivia(node, tokens) + '"' + name + '"'
    return Node("Literal", [Text(text)], node.span,
                {"literal_kind": "string", "value": name, "origin": "substituted"})


def name_substitute(expr: Node, enclosing_class: str | None = None,
                    tokens: list[Token] | None = None,
                    trigger_names: frozenset[str] | set[str] = frozenset()) -> Node:
    """Replace project member accesses and invocations by their simple names.

    ``TrigIt.``-rooted chains, ``System.out`` prints and calls to declared
    trigger methods are kept; arguments of substituted invocations are dropped.
    The rewrite reaches a fixed point in a single pass.
    """

    def keep_root(n: Node) -> bool:
        root = chain_root(n)
        if root.kind == "NameRef" and root.name in (API_ROOT, PRINT_ROOT):
            return True
        return root.kind == "CallChain" and root.name in trigger_names

    def visit(n: Node) -> Node:
        if n.kind == "CallChain":
            if not n.attrs.get("has_target"):
                if n.name in trigger_names:
                    return n
                return _name_literal(n, n.name, tokens)
            if not keep_root(n):
                return _name_literal(n, n.name, tokens)
        elif n.kind == "MemberAccess":
            if not keep_root(n):
                return _name_literal(n, n.name, tokens)
            return n
        elif n.kind == "NameRef":
            if n.name in (API_ROOT, PRINT_ROOT):
                return n
            return _name_literal(n, n.name, tokens)
        elif n.kind in ("Literal", "ThisRef"):
            return n
        parts = []
        changed = False
        for p in n.parts:
            if isinstance(p, Node):
                q = visit(p)
                changed = changed or q is not p
                parts.append(q)
            else:
                parts.append(p)
        return n.replace(parts=parts) if changed else n

    return visit(expr)


# -- compilation -------------------------------------------------------------

class CompileError(Exception):
    def __init__(self, category: Category, message: str, span: Span | None):
        super().__init__(message)
        self.category = category
        self.span = span


_PREDICATES = ("isPublic", "isProtected", "isPrivate", "isStatic", "isFinal")
_MODIFIED = (ir.CLASS, ir.METHOD, ir.FIELD, ir.MODIFIERS)
_NAMED = (ir.CLASS, ir.METHOD, ir.FIELD, ir.JAVA_FILE, ir.BUILD_CONFIG)

# (receiver type, method) -> (argument type or None, result type)
_MEMBER_API: dict[tuple[str, str], tuple[str | None, str]] = {}
for _t in _NAMED:
    _MEMBER_API[(_t, "getName")] = (None, ir.STRING)
for _t in (ir.CLASS, ir.METHOD, ir.FIELD):
    _MEMBER_API[(_t, "getModifiers")] = (None, ir.MODIFIERS)
for _t in _MODIFIED:
    for _p in _PREDICATES:
        _MEMBER_API[(_t, _p)] = (None, ir.BOOLEAN)
_MEMBER_API.update({
    (ir.CLASS, "getFields"): (None, ir.stream_of(ir.FIELD)),
    (ir.CLASS, "getMethods"): (None, ir.stream_of(ir.METHOD)),
    (ir.CLASS, "getMethod"): (ir.STRING, ir.METHOD),
    (ir.CLASS, "getField"): (ir.STRING, ir.FIELD),
    (ir.JAVA_FILE, "getClasses"): (None, ir.stream_of(ir.CLASS)),
    (ir.BUILD_CONFIG, "getJavaVersion"): (None, ir.VERSION),
    (ir.VERSION, "greaterEqualThan"): (ir.VERSION, ir.BOOLEAN),
    (ir.VERSION, "equals"): (ir.VERSION, ir.BOOLEAN),
    (ir.STRING, "equals"): (ir.STRING, ir.BOOLEAN),
})

_STATIC_SOURCES = {"getClasses": ("classes", ir.CLASS),
                   "getJavaFiles": ("javaFiles", ir.JAVA_FILE),
                   "getBuildConfigs": ("buildConfigs", ir.BUILD_CONFIG)}
# TrigIt.x(...) shorthands resolved against the enclosing class.
_CONTEXT_SUGAR = ("getMethod", "getField", "getMethods", "getFields", "getModifiers", "getName")
_VISIBILITY_MUTATIONS = ("setPublic", "setProtected", "setPrivate")
_FLAG_MUTATIONS = ("setStatic", "setFinal")


def _flattened(t: str) -> str:
    inner = ir.element_type(t)
    return inner if inner is not None and t.startswith("Stream<") else t


class _Compiler:
    def __init__(self, class_name: str, trigger_names):
        self.class_name = class_name
        self.trigger_names = trigger_names

    def unknown(self, name, span):
        raise CompileError(Category.UNKNOWN_API, f"unknown TrigIt API {name!r}", span)

    def shape(self, msg, span):
        raise CompileError(Category.BAD_BODY_SHAPE, msg, span)

    def string_arg(self, call: Node) -> ir.Literal:
        args = call_args(call)
        if len(args) != 1 or args[0].kind != "Literal" or args[0].attrs["literal_kind"] != "string":
            self.shape(f"{call.name} expects one name argument", call.span)
        a = args[0]
        return ir.Literal(a.attrs["value"], "string", a.attrs.get("origin", "source"), ir.STRING, a.span)

    def no_args(self, call: Node):
        if call_args(call):
            self.shape(f"{call.name} takes no arguments", call.span)

    def context(self, span) -> ir.Source:
        return ir.Source("context", self.class_name, ir.CLASS, span)

    # expressions

    def query(self, n: Node) -> ir.Query:
        k = n.kind
        if k == "ParenExpr":
            return self.query(n.children[0])
        if k == "UnaryExpr":
            inner = self.query(n.children[0])
            if n.attrs["op"] == "!":
                self.expect_type(inner, ir.BOOLEAN, n)
                return ir.Logic("not", (inner,), span=n.span)
            if isinstance(inner, ir.Literal) and inner.kind == "number":
                return ir.Literal("-" + inner.value, "number", inner.origin, ir.NUMBER, n.span)
            self.shape("unary minus applies only to number literals", n.span)
        if k == "BinaryExpr":
            op = n.attrs["op"]
            left, right = self.query(n.children[0]), self.query(n.children[1])
            if op in ("&&", "||"):
                self.expect_type(left, ir.BOOLEAN, n.children[0])
                self.expect_type(right, ir.BOOLEAN, n.children[1])
                kind = "and" if op == "&&" else "or"
                ops = []
                for side in (left, right):
                    if isinstance(side, ir.Logic) and side.op == kind:
                        ops.extend(side.operands)
                    else:
                        ops.append(side)
                return ir.Logic(kind, tuple(ops), span=n.span)
            if op in ("==", "!=", "<", ">", "<=", ">="):
                if left.type != right.type or left.type not in (ir.NUMBER, ir.BOOLEAN, ir.STRING):
                    self.shape(f"cannot compare {left.type} with {right.type}", n.span)
                if left.type != ir.NUMBER and op not in ("==", "!="):
                    self.shape(f"operator {op} needs numbers", n.span)
                return ir.Compare(op, left, right, span=n.span)
            self.shape(f"operator {op!r} is not allowed in a query", n.span)
        if k == "Literal":
            lk = n.attrs["literal_kind"]
            t = {"string": ir.STRING, "number": ir.NUMBER, "boolean": ir.BOOLEAN, "null": ir.NULL}[lk]
            return ir.Literal(n.attrs["value"], lk, n.attrs.get("origin", "source"), t, n.span)
        if k == "MemberAccess":
            target = n.children[0]
            if target.kind == "NameRef" and target.name == API_ROOT:
                if n.name in JAVA_CONSTANTS:
                    return ir.Literal(JAVA_CONSTANTS[n.name], "version", "constant", ir.VERSION, n.span)
            self.unknown(n.name, n.span)
        if k == "CallChain":
            return self.call(n)
        if k == "NameRef":
            self.shape(f"bare name {n.name!r} is not a query", n.span)
        self.shape(f"{k} is not allowed in a query", n.span)

    def expect_type(self, q: ir.Query, t: str, node: Node):
        if q.type != t:
            self.shape(f"expected {t} operand, got {q.type}", node.span)

    def call(self, n: Node) -> ir.Query:
        target = call_target(n)
        name = n.name
        if target is None:
            if name in self.trigger_names:
                self.no_args(n)
                return ir.TriggerRef(name, self.class_name, span=n.span)
            self.unknown(name, n.span)
        if target.kind == "NameRef" and target.name == API_ROOT:
            return self.static_call(n)
        recv = self.query(target)
        return self.member_call(recv, n)

    def static_call(self, n: Node) -> ir.Query:
        name = n.name
        if name in _STATIC_SOURCES:
            self.no_args(n)
            kind, elem = _STATIC_SOURCES[name]
            return ir.Source(kind, None, ir.stream_of(elem), n.span)
        if name == "hasClass":
            return ir.Accessor(None, "hasClass", self.string_arg(n), ir.BOOLEAN, n.span)
        if name == "getClass":
            return ir.Accessor(None, "getClass", self.string_arg(n), ir.CLASS, n.span)
        if name == "getJavaVersion":
            self.no_args(n)
            return ir.Accessor(None, "getJavaVersion", None, ir.VERSION, n.span)
        if name in _CONTEXT_SUGAR:
            return self.member_call(self.context(n.span), n)
        self.unknown(name, n.span)

    def member_call(self, recv: ir.Query, n: Node) -> ir.Query:
        name = n.name
        t = recv.type
        elem = ir.element_type(t)
        if t.startswith("Stream<"):
            if name == "count":
                self.no_args(n)
                return ir.StreamOp(recv, "count", None, ir.NUMBER, n.span)
            if name in ("filter", "anyMatch"):
                arg = self.string_arg(n)
                if (elem, arg.value) not in _MEMBER_API or _MEMBER_API[(elem, arg.value)] != (None, ir.BOOLEAN):
                    self.unknown(arg.value, arg.span)
                rt = t if name == "filter" else ir.BOOLEAN
                return ir.StreamOp(recv, name, arg, rt, n.span)
            if name == "map":
                arg = self.string_arg(n)
                sig = _MEMBER_API.get((elem, arg.value))
                if sig is None or sig[0] is not None:
                    self.unknown(arg.value, arg.span)
                return ir.StreamOp(recv, "map", arg, ir.stream_of(_flattened(sig[1])), n.span)
            if name == "findAny":
                if elem not in _NAMED:
                    self.unknown(name, n.span)
                return ir.StreamOp(recv, "findAny", self.string_arg(n), ir.optional_of(elem), n.span)
            self.unknown(name, n.span)
        if t.startswith("Optional<"):
            if name == "isPresent":
                self.no_args(n)
                return ir.Predicate(recv, "isPresent", None, ir.BOOLEAN, n.span)
            self.unknown(name, n.span)
        sig = _MEMBER_API.get((t, name))
        if sig is None:
            self.unknown(name, n.span)
        argtype, rtype = sig
        if argtype is None:
            self.no_args(n)
            if rtype == ir.BOOLEAN:
                return ir.Predicate(recv, name, None, ir.BOOLEAN, n.span)
            return ir.Accessor(recv, name, None, rtype, n.span)
        args = call_args(n)
        if len(args) != 1:
            self.shape(f"{name} expects one argument", n.span)
        arg = self.query(args[0])
        if arg.type != argtype:
            self.shape(f"{name} expects a {argtype} argument, got {arg.type}", args[0].span)
        if rtype == ir.BOOLEAN:
            return ir.Predicate(recv, name, arg, ir.BOOLEAN, n.span)
        return ir.Accessor(recv, name, arg, rtype, n.span)

    # actions

    def selector(self, n: Node) -> ir.Selector:
        """Resolve a fixed target chain: [TrigIt.getClass(c) | TrigIt] [.getMethod(m) | .getField(f)]."""
        if n.kind != "CallChain":
            self.shape("action target must be a TrigIt selector", n.span)
        target = call_target(n)
        if target is None:
            self.unknown(n.name, n.span)
        if target.kind == "NameRef" and target.name == API_ROOT:
            if n.name == "getClass":
                return ir.Selector(self.string_arg(n).value)
            if n.name in ("getMethod", "getField"):
                kind = "method" if n.name == "getMethod" else "field"
                return ir.Selector(self.class_name, kind, self.string_arg(n).value)
            self.unknown(n.name, n.span)
        base = self.selector(target)
        if base.member_kind is None and n.name in ("getMethod", "getField"):
            kind = "method" if n.name == "getMethod" else "field"
            return ir.Selector(base.class_name, kind, self.string_arg(n).value)
        self.unknown(n.name, n.span)

    def action(self, stmt: Node):
        call = stmt.children[0]
        root = chain_root(call)
        if root.kind == "NameRef" and root.name == PRINT_ROOT:
            return self.print_stmt(call)
        if not (root.kind == "NameRef" and root.name == API_ROOT):
            self.shape("transformation statements must start with TrigIt", call.span)
        name = call.name
        target = call_target(call)
        if name in ("removeMethod", "removeField"):
            kind = "method" if name == "removeMethod" else "field"
            member = self.string_arg(call).value
            if target.kind == "NameRef":
                owner = self.class_name
            else:
                sel = self.selector(target)
                if sel.member_kind is not None:
                    self.unknown(name, call.span)
                owner = sel.class_name
            return ir.ActionStep(ir.Selector(owner, kind, member), name, None, call.span)
        if target.kind == "NameRef":
            self.unknown(name, call.span)
        sel = self.selector(target)
        if name in _VISIBILITY_MUTATIONS:
            self.no_args(call)
            return ir.ActionStep(sel, name, None, call.span)
        if name in _FLAG_MUTATIONS:
            args = call_args(call)
            if len(args) == 0:
                flag = True
            elif len(args) == 1 and args[0].kind == "Literal" and args[0].attrs["literal_kind"] == "boolean":
                flag = args[0].attrs["value"]
            else:
                self.shape(f"{name} expects a boolean literal", call.span)
            return ir.ActionStep(sel, name, flag, call.span)
        if name == "remove":
            self.no_args(call)
            if sel.member_kind is None:
                self.unknown(name, call.span)
            mutation = "removeMethod" if sel.member_kind == "method" else "removeField"
            return ir.ActionStep(sel, mutation, None, call.span)
        self.unknown(name, call.span)

    def print_stmt(self, call: Node) -> ir.DiagnosticPrint:
        target = call_target(call)
        if not (call.name in ("println", "print") and target is not None
                and target.kind == "MemberAccess" and target.name in ("out", "err")):
            self.unknown(call.name, call.span)
        args = call_args(call)
        if len(args) > 1:
            self.shape("print takes one argument", call.span)
        return ir.DiagnosticPrint(self.message(args[0]) if args else "", call.span)

    def message(self, n: Node) -> str:
        if n.kind == "Literal":
            v = n.attrs["value"]
            return "null" if v is None else str(v).lower() if isinstance(v, bool) else str(v)
        if n.kind == "BinaryExpr" and n.attrs["op"] == "+":
            return self.message(n.children[0]) + self.message(n.children[1])
        if n.kind == "ParenExpr":
            return self.message(n.children[0])
        self.shape("print arguments must be literals joined with +", n.span)


def compile_unit(method: Node, class_name: str, tokens: list[Token] | None = None,
                 trigger_names=frozenset()) -> TrigItUnit | list[EncodingError]:
    """Validate, substitute names, and compile one annotated method."""
    errors = validate_trigit_method(method)
    if errors:
        return errors
    rtext = method.typeref("return").attrs["text"]
    kind = Kind.TRIGGER if rtext == "boolean" else Kind.ACTION
    comp = _Compiler(class_name, trigger_names)
    stmt = method.body.children[0]
    try:
        if kind is Kind.TRIGGER:
            expr = name_substitute(stmt.children[0], class_name, tokens, trigger_names)
            query = comp.query(expr)
            actions = []
        else:
            cond, then, _ = if_parts(stmt)
            query = comp.query(name_substitute(cond, class_name, tokens, trigger_names))
            actions = []
            for s in _then_statements(then):
                sub = name_substitute(s, class_name, tokens, trigger_names)
                actions.append(comp.action(sub))
        if query.type != ir.BOOLEAN:
            comp.shape(f"query must be boolean, got {query.type}", stmt.span)
    except CompileError as exc:
        return [EncodingError(method.name, exc.span or method.span, exc.category, str(exc))]
    return TrigItUnit(method.name, class_name, kind, query, actions, [], method.span, [], method)


# -- guard sites ---------------------------------------------------------------

def _guard_call(cond: Node) -> tuple[str, bool] | None:
    negated = False
    while cond.kind == "ParenExpr":
        cond = cond.children[0]
    if cond.kind == "UnaryExpr" and cond.attrs["op"] == "!":
        negated = True
        cond = cond.children[0]
        while cond.kind == "ParenExpr":
            cond = cond.children[0]
    if cond.kind == "CallChain" and not cond.attrs.get("has_target") and not call_args(cond):
        return cond.name, negated
    return None


def _if_statements(node: Node):
    if node.kind == "MethodDecl" and is_trigit_method(node):
        return
    if node.kind == "IfStmt":
        yield node
    for c in node.children:
        yield from _if_statements(c)


def guard_sites_by_trigger(asts: dict[str, Node]) -> dict[str, list[GuardSite]]:
    """One pass over the project collecting every ``if (t())`` / ``if (!t())`` keyed by ``t``."""
    found: dict[str, list[GuardSite]] = {}
    for path in sorted(asts):
        for stmt in _if_statements(asts[path]):
            cond, then, other = if_parts(stmt)
            g = _guard_call(cond)
            if g is None:
                continue
            found.setdefault(g[0], []).append(
                GuardSite(path, stmt.span, g[0], g[1], other is not None, then.span,
                          other.span if other is not None else None, stmt))
    return found


def find_guard_sites(asts: dict[str, Node], trigger_name: str) -> list[GuardSite]:
    """Every if statement whose condition is ``trigger()`` or ``!trigger()``."""
    return guard_sites_by_trigger(asts).get(trigger_name, [])


def enclosing_class_of(asts: dict[str, Node], span: Span) -> str | None:
    ast = asts.get(span.file)
    if ast is None:
        return None
    best = None
    for qname, cls in iter_classes(ast):
        if cls.span.contains(span):
            best = qname
    return best


# -- whole-project front end -------------------------------------------------------

@dataclass
class FrontendResult:
    units: list[TrigItUnit]
    errors: list[EncodingError]
    diagnostics: list[str]
    stripped: dict[str, Node]  # qualified class name -> stripped ClassDecl
    failed: list[tuple[str, str, Span]] = field(default_factory=list)  # (class, method, span)


def compile_project(files) -> FrontendResult:
    """Run the front end over ``{path: SourceFile}`` (parsed files only)."""
    asts = {p: f.ast for p, f in files.items() if f.ast is not None}
    units: list[TrigItUnit] = []
    errors: list[EncodingError] = []
    diagnostics: list[str] = []
    stripped: dict[str, Node] = {}
    failed = []
    for path in sorted(asts):
        ast = asts[path]
        tokens = files[path].tokens
        pkg = ast.child("PackageDecl")
        prefix = pkg.name if pkg is not None else ""
        for cls in ast.children_of("ClassDecl"):
            qname = f"{prefix}.{cls.name}" if prefix else cls.name
            slim = strip_for_evaluation(cls, diagnostics)
            methods = [m for m in slim.members if m.kind == "MethodDecl"]
            if not methods:
                continue
            stripped[qname] = slim
            triggers = frozenset(m.name for m in methods
                                 if m.typeref("return") is not None
                                 and m.typeref("return").attrs["text"] == "boolean")
            for m in methods:
                result = compile_unit(m, qname, tokens, triggers)
                if isinstance(result, list):
                    errors.extend(result)
                    failed.append((qname, m.name, m.span))
                else:
                    units.append(result)
    _bind_guard_sites(asts, units, errors, diagnostics)
    return FrontendResult(units, errors, diagnostics, stripped, failed)


def _bind_guard_sites(asts, units, errors, diagnostics):
    by_name: dict[str, list[TrigItUnit]] = {}
    for u in units:
        if u.kind is Kind.TRIGGER:
            by_name.setdefault(u.name, []).append(u)
    all_sites = guard_sites_by_trigger(asts) if by_name else {}
    for name, owners in by_name.items():
        for site in all_sites.get(name, []):
            cls = enclosing_class_of(asts, site.span)
            local = [u for u in owners if u.class_name == cls]
            if local:
                local[0].guard_sites.append(site)
            elif len(owners) == 1:
                owners[0].guard_sites.append(site)
            else:
                errors.append(EncodingError(name, site.span, Category.AMBIGUOUS,
                                            f"guard call {name}() matches {len(owners)} triggers"))
        for u in owners:
            if not u.guard_sites:
                msg = f"unused trigger {u.class_name}.{u.name}"
                u.diagnostics.append(msg)
                diagnostics.append(msg)
