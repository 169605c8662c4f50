"""TODO-comment mining: extraction, normalization, cue filtering and trigger/action splitting."""
from __future__ import annotations

import json
import logging
import re
from dataclasses import asdict, dataclass, field
from pathlib import Path

from .syntax.lexer import LexError, tokenize

log = logging.getLogger(__name__)

CUE_WORDS = ("if", "when", "once", "as", "then")

MARKER = re.compile(r"(?<![A-Za-z0-9_])TODO(?![A-Za-z0-9_])")
WORD = re.compile(r"[A-Za-z0-9_$]+")

_ATTRIBUTION = re.compile(r"^\s*\([^()]*\)")
_SEPARATOR = re.compile(r"^\s*[:\-]")


@dataclass
class CommentRecord:
    file: str
    line: int
    raw: str
    text: str
    cues: list[str] = field(default_factory=list)
    trigger: str | None = None
    action: str | None = None
    template: int | None = None

    @property
    def split(self):
        if self.template is None:
            return None
        return self.trigger, self.action, self.template

    def to_json(self) -> str:
        return json.dumps(asdict(self), ensure_ascii=False)


# -- extraction ---------------------------------------------------------------------

def comments_of(source: str, file: str = "<string>"):
    """Yield (line, text) for every comment in a source file, in order."""
    for tok in tokenize(source, file):
        for tv in tok.trivia:
            if tv.kind != "whitespace":
                yield tv.line, tv.text


def extract_todos(source_root) -> list[CommentRecord]:
    """One record per comment containing the case-sensitive marker, ordered by (file, line)."""
    root = Path(source_root)
    if not root.is_dir():
        raise OSError(f"{root}: not a directory")
    records = []
    for path in sorted(root.rglob("*.java")):
        rel = path.relative_to(root).as_posix()
        text = path.read_text(encoding="utf-8")
        try:
            comments = list(comments_of(text, rel))
        except LexError as exc:
            log.warning("skipping %s: %s", rel, exc)
            continue
        for line, raw in comments:
            if MARKER.search(raw):
                records.append(CommentRecord(rel, line, raw, normalize(raw)))
    records.sort(key=lambda r: (r.file, r.line))
    return records


# -- normalization ----------------------------------------------------------------------

def _strip_comment_syntax(text: str) -> str:
    text = text.strip()
    if text.startswith("//"):
        text = text[2:]
    elif text.startswith("/*"):
        text = text[2:]
        if text.endswith("*/"):
            text = text[:-2]
        text = text.lstrip("*")
    lines = [re.sub(r"^\s*\*+(?!/)", "", ln) for ln in text.split("\n")]
    return " ".join(" ".join(lines).split())


def _normalize_once(text: str) -> str:
    text = _strip_comment_syntax(text)
    m = MARKER.search(text)
    if m is None:
        return text
    rest = text[m.end():]
    rest = _ATTRIBUTION.sub("", rest, count=1)
    rest = _SEPARATOR.sub("", rest, count=1)
    return rest.strip()


def normalize(raw: str) -> str:
    """Strip comment syntax, the marker, an optional attribution and a ``:``/``-`` separator.

    Text before the marker is treated as decoration and dropped.
    """
    prev, cur = None, raw
    while cur != prev:
        prev, cur = cur, _normalize_once(cur)
    return cur


# -- cue words ----------------------------------------------------------------------------

def cue_words(text: str) -> list[str]:
    """Cue words in order of occurrence; identifiers count as single words."""
    return [w.lower() for w in WORD.findall(text) if w.lower() in CUE_WORDS]


def filter_by_cue_words(records: list[CommentRecord]) -> list[CommentRecord]:
    kept = []
    for r in records:
        r.cues = cue_words(r.text)
        if r.cues:
            kept.append(r)
    return kept


# -- trigger/action split ------------------------------------------------------------

@dataclass(frozen=True)
class Template:
    id: int
    pattern: re.Pattern
    form: str  # canonical re-join, with {T} and {A}


def _t(i, pattern, form):
    return Template(i, re.compile(pattern, re.IGNORECASE | re.DOTALL), form)


TEMPLATES = (
    _t(1, r"^if\s+(?P<T>.+?),\s+then\s+(?P<A>.+)$", "if {T}, then {A}"),
    _t(2, r"^if\s+(?P<T>.+?),\s+(?P<A>.+)$", "if {T}, {A}"),
    _t(3, r"^if\s+(?P<T>.+?)\s+then\s+(?P<A>.+)$", "if {T} then {A}"),
    _t(4, r"^(?P<A>.+?)\s+if\s+(?P<T>.+)$", "{A} if {T}"),
    _t(5, r"^when\s+(?P<T>.+?),\s+(?P<A>.+)$", "when {T}, {A}"),
    _t(6, r"^(?P<A>.+?)\s+when\s+(?P<T>.+)$", "{A} when {T}"),
    _t(7, r"^once\s+(?P<T>.+?),\s+(?P<A>.+)$", "once {T}, {A}"),
    _t(8, r"^(?P<A>.+?)\s+once\s+(?P<T>.+)$", "{A} once {T}"),
    _t(9, r"^(?P<A>.+?)\s+as\s+soon\s+as\s+(?P<T>.+)$", "{A} as soon as {T}"),
    _t(10, r"^(?P<T>.+?),\s+then\s+(?P<A>.+)$", "{T}, then {A}"),
)


def split_trigger_action(text: str) -> tuple[str, str, int] | None:
    """First matching template wins; returns (trigger, action, template id)."""
    text = text.strip()
    for tpl in TEMPLATES:
        m = tpl.pattern.match(text)
        if m is None:
            continue
        trig, act = m.group("T").strip(), m.group("A").strip()
        if trig and act:
            return trig, act, tpl.id
    return None


def join_split(template_id: int, trigger: str, action: str) -> str:
    return TEMPLATES[template_id - 1].form.format(T=trigger, A=action)


def mine(source_root, keep_all: bool = False) -> tuple[list[CommentRecord], dict[str, int]]:
    todos = extract_todos(source_root)
    candidates = filter_by_cue_words(todos)
    out = todos if keep_all else candidates
    for r in out:
        if r.cues:
            s = split_trigger_action(r.text)
            if s is not None:
                r.trigger, r.action, r.template = s
    summary = {"todo": len(todos), "tac": len(candidates),
               "split": sum(1 for r in out if r.template is not None)}
    return out, summary


def format_summary(summary: dict[str, int]) -> str:
    return f"#TODO {summary['todo']}\t#TAC {summary['tac']}\t#split {summary['split']}"
