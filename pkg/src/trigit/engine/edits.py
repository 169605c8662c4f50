"""Deferred source edits: explicit actions, guard folding, unit removal."""
from __future__ import annotations

import enum
from dataclasses import dataclass

from .. import ir
from ..frontend import Category, TrigItUnit, iter_classes
from ..model import SourceFile
from ..syntax import Node
from ..syntax.parser import if_parts
from ..syntax.printer import line_indent

VISIBILITY = ("public", "protected", "private")


class Origin(str, enum.Enum):
    EXPLICIT_ACTION = "EXPLICIT_ACTION"
    GUARD_FOLD = "GUARD_FOLD"
    METHOD_REMOVAL = "METHOD_REMOVAL"
    CALLSITE_FOLD = "CALLSITE_FOLD"


class OverlapError(Exception):
    pass


class ActionError(Exception):
    def __init__(self, category, message):
        super().__init__(message)
        self.category = category


@dataclass(frozen=True)
class Edit:
    """Replace ``text[start:end]`` of ``file``; lines describe the touched declaration."""

    file: str
    start: int
    end: int
    replacement: str
    origin: Origin
    unit: str
    start_line: int
    end_line: int

    def overlaps(self, other: "Edit") -> bool:
        if self.file != other.file:
            return False
        return self.start < other.end and other.start < self.end


def sort_edits(edits):
    return sorted(edits, key=lambda e: (e.file, e.start, e.end))


def check_overlaps(edits) -> None:
    by_file: dict[str, list[Edit]] = {}
    for e in edits:
        by_file.setdefault(e.file, []).append(e)
    for group in by_file.values():
        group = sorted(group, key=lambda e: (e.start, e.end))
        for a, b in zip(group, group[1:]):
            if b.start < a.end:
                raise OverlapError(f"{a.file}: edits at offsets {a.start}-{a.end} and {b.start}-{b.end} overlap")


def drop_conflicts(edits: list[Edit]) -> tuple[list[Edit], list[Edit]]:
    """Keep edits in priority order, skipping any that overlap an earlier one."""
    kept: list[Edit] = []
    dropped: list[Edit] = []
    for e in edits:
        if any(e.overlaps(k) for k in kept):
            dropped.append(e)
        else:
            kept.append(e)
    return kept, dropped


def materialize(text: str, edits) -> str:
    """Apply non-overlapping edits of one file to its original text."""
    edits = sorted(edits, key=lambda e: (e.start, e.end))
    check_overlaps(edits)
    out = []
    pos = 0
    for e in edits:
        out.append(text[pos:e.start])
        out.append(e.replacement)
        pos = e.end
    out.append(text[pos:])
    return "".join(out)


def materialize_all(files: dict[str, str], edits) -> dict[str, str]:
    by_file: dict[str, list[Edit]] = {}
    for e in edits:
        by_file.setdefault(e.file, []).append(e)
    return {path: materialize(files[path], by_file.get(path, [])) for path in files}


# -- declaration lookup --------------------------------------------------------------

def find_declaration(files: dict[str, SourceFile], sel: ir.Selector) -> tuple[SourceFile, Node] | None:
    simple = sel.class_name.rsplit(".", 1)[-1]
    candidates = []
    for path in sorted(files):
        f = files[path]
        if f.ast is None:
            continue
        for qname, cls in iter_classes(f.ast):
            if qname == sel.class_name:
                candidates.insert(0, (f, cls))
            elif cls.name == simple:
                candidates.append((f, cls))
    if not candidates:
        return None
    f, cls = candidates[0]
    if sel.member_kind is None:
        return f, cls
    want = "MethodDecl" if sel.member_kind == "method" else "FieldDecl"
    for m in cls.members:
        if m.kind == want and m.name == sel.member_name:
            return f, m
    return None


def _head_token(decl: Node) -> int:
    """First token after the annotations and modifiers."""
    for p in decl.parts:
        if isinstance(p, int):
            return p
        if p.kind in ("Annotation", "ModifierList"):
            continue
        t = p.first_token()
        if t is not None:
            return t
    raise ValueError("declaration has no head token")


def removal_range(f: SourceFile, decl: Node) -> tuple[int, int]:
    """Declaration text plus the trivia owned by its first token."""
    first = f.tokens[decl.first_token()]
    last = f.tokens[decl.last_token()]
    return first.trivia_start, last.span.end


def removal_edit(f: SourceFile, decl: Node, origin: Origin, unit: str) -> Edit:
    start, end = removal_range(f, decl)
    return Edit(f.path, start, end, "", origin, unit, decl.span.start_line, decl.span.end_line)


# -- explicit actions ---------------------------------------------------------------

def _modifier_tokens(f: SourceFile, decl: Node) -> list[int]:
    mods = decl.modifiers
    return [p for p in mods.parts if isinstance(p, int)] if mods is not None else []


def _token_edit(f, idx, replacement, unit, decl) -> Edit:
    tok = f.tokens[idx]
    return Edit(f.path, tok.span.start, tok.span.end, replacement, Origin.EXPLICIT_ACTION, unit,
                tok.span.start_line, tok.span.end_line)


def _insert_edit(f, offset, text, unit, decl) -> Edit:
    line = f.text.count("\n", 0, offset) + 1
    return Edit(f.path, offset, offset, text, Origin.EXPLICIT_ACTION, unit, line, line)


def _delete_keyword(f, idx, unit) -> Edit:
    tok = f.tokens[idx]
    end = tok.span.end
    while end < len(f.text) and f.text[end] in " \t":
        end += 1
    return Edit(f.path, tok.span.start, end, "", Origin.EXPLICIT_ACTION, unit,
                tok.span.start_line, tok.span.end_line)


def action_edits(step: ir.ActionStep, files: dict[str, SourceFile], unit: str,
                 notes: list[str]) -> list[Edit]:
    found = find_declaration(files, step.selector)
    if found is None:
        raise ActionError(Category.MISSING_REFERENT, f"{step.selector.describe()} vanished")
    f, decl = found
    mods = _modifier_tokens(f, decl)
    texts = {f.tokens[i].text: i for i in mods}
    name = step.selector.describe()
    m = step.mutation
    if m in ("setPublic", "setProtected", "setPrivate"):
        want = m[3:].lower()
        current = next((i for i in mods if f.tokens[i].text in VISIBILITY), None)
        if current is not None and f.tokens[current].text == want:
            notes.append(f"{name} is already {want}")
            return []
        if current is not None:
            return [_token_edit(f, current, want, unit, decl)]
        anchor = mods[0] if mods else _head_token(decl)
        return [_insert_edit(f, f.tokens[anchor].span.start, want + " ", unit, decl)]
    if m in ("setStatic", "setFinal"):
        word = "static" if m == "setStatic" else "final"
        present = word in texts
        if present == step.arg:
            notes.append(f"{name} is already {'' if step.arg else 'not '}{word}")
            return []
        if not step.arg:
            return [_delete_keyword(f, texts[word], unit)]
        if word == "static":
            rest = [i for i in mods if f.tokens[i].text not in VISIBILITY]
            anchor = rest[0] if rest else _head_token(decl)
        else:
            anchor = _head_token(decl)
        return [_insert_edit(f, f.tokens[anchor].span.start, word + " ", unit, decl)]
    if m in ("removeMethod", "removeField"):
        return [removal_edit(f, decl, Origin.EXPLICIT_ACTION, unit)]
    raise ValueError(f"unknown mutation {m}")


def execute_actions(unit: TrigItUnit, files: dict[str, SourceFile],
                    notes: list[str] | None = None) -> list[Edit]:
    """Turn each action step into edits, in statement order."""
    notes = notes if notes is not None else []
    edits: list[Edit] = []
    for step in unit.actions:
        if isinstance(step, ir.DiagnosticPrint):
            notes.append(f"[{unit.name}] {step.message}")
            continue
        edits.extend(action_edits(step, files, unit.name, notes))
    return edits


def describe_step(step) -> str:
    if isinstance(step, ir.DiagnosticPrint):
        return f"would print {step.message!r}"
    name = step.selector.describe()
    m = step.mutation
    if m in ("setPublic", "setProtected", "setPrivate"):
        return f"would set {name} to {m[3:].lower()}"
    if m in ("setStatic", "setFinal"):
        return f"would set {name} {m[3:].lower()}={str(step.arg).lower()}"
    return f"would remove {step.selector.member_kind} {name}"


# -- guard folding ---------------------------------------------------------------------

def _expand_to_lines(text: str, start: int, end: int) -> tuple[int, int]:
    ls = text.rfind("\n", 0, start) + 1
    le = text.find("\n", end)
    le = len(text) if le == -1 else le
    if text[ls:start].strip() == "" and text[end:le].strip() == "":
        return ls, min(le + 1, len(text))
    return start, end


def _branch_text(f: SourceFile, stmt: Node, outer_indent: str) -> str:
    if stmt.kind == "Block":
        inner = stmt.children
        if not inner:
            return ""
        start, end = inner[0].span.start, inner[-1].span.end
    else:
        start, end = stmt.span.start, stmt.span.end
    body = f.text[start:end]
    inner_indent = line_indent(f.text, start)
    lines = body.split("\n")
    for k in range(1, len(lines)):
        if lines[k].startswith(inner_indent):
            lines[k] = outer_indent + lines[k][len(inner_indent):]
    return "\n".join(lines)


def fold_site(site, value: bool, f: SourceFile, unit: str) -> Edit:
    effective = value != site.negated
    node = site.node
    _, then, other = if_parts(node)
    outer = line_indent(f.text, node.span.start)
    if effective:
        content = _branch_text(f, then, outer)
    elif other is not None:
        content = _branch_text(f, other, outer)
    else:
        content = ""
    start, end = node.span.start, node.span.end
    if not content:
        start, end = _expand_to_lines(f.text, start, end)
    return Edit(f.path, start, end, content, Origin.GUARD_FOLD, unit,
                node.span.start_line, node.span.end_line)


def fold_guards(sites, value: bool, files: dict[str, SourceFile], unit: str = "") -> list[Edit]:
    """Replace each guarded ``if`` by the branch its (possibly negated) trigger selects."""
    return [fold_site(s, value, files[s.file], unit or s.trigger) for s in sites]


def remove_satisfied_units(units, results, files: dict[str, SourceFile]) -> list[Edit]:
    """One deletion edit per satisfied unit; unsatisfied units stay put."""
    satisfied = {(r.class_name, r.unit) for r in results if r.satisfied}
    out = []
    for u in units:
        if u.key in satisfied and u.method is not None:
            out.append(removal_edit(files[u.file], u.method, Origin.METHOD_REMOVAL, u.name))
    return out
