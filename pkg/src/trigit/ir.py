"""Interpreted forms of trigger queries and action statements."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

from .syntax import Span

# Static result types used during compilation.
CLASS, METHOD, FIELD = "Class", "Method", "Field"
JAVA_FILE, BUILD_CONFIG = "JavaFile", "BuildConfig"
MODIFIERS, VERSION = "Modifiers", "Version"
STRING, NUMBER, BOOLEAN, NULL = "String", "Number", "Boolean", "Null"


def stream_of(t: str) -> str:
    return f"Stream<{t}>"


def optional_of(t: str) -> str:
    return f"Optional<{t}>"


def element_type(t: str) -> str | None:
    for prefix in ("Stream<", "Optional<"):
        if t.startswith(prefix):
            return t[len(prefix):-1]
    return None


@dataclass(frozen=True)
class Query:
    """Base class; ``type`` is the static result type."""

    @property
    def children(self) -> tuple["Query", ...]:
        return ()


@dataclass(frozen=True)
class Source(Query):
    kind: str  # classes | javaFiles | buildConfigs | context
    context: str | None = None  # qualified class name for kind == "context"
    type: str = ""
    span: Span | None = field(default=None, compare=False)


@dataclass(frozen=True)
class Literal(Query):
    value: Any
    kind: str  # string | number | boolean | null | version
    origin: str = "source"  # source | substituted | constant
    type: str = ""
    span: Span | None = field(default=None, compare=False)


@dataclass(frozen=True)
class StreamOp(Query):
    target: Query
    op: str  # filter | map | count | anyMatch | findAny
    arg: Literal | None
    type: str = ""
    span: Span | None = field(default=None, compare=False)

    @property
    def children(self):
        return (self.target,) + ((self.arg,) if self.arg is not None else ())


@dataclass(frozen=True)
class Accessor(Query):
    target: Query | None  # None for TrigIt-rooted sugar such as hasClass
    name: str
    arg: Literal | None = None
    type: str = ""
    span: Span | None = field(default=None, compare=False)

    @property
    def children(self):
        out = () if self.target is None else (self.target,)
        return out + ((self.arg,) if self.arg is not None else ())


@dataclass(frozen=True)
class Predicate(Query):
    target: Query
    name: str
    arg: Query | None = None
    type: str = BOOLEAN
    span: Span | None = field(default=None, compare=False)

    @property
    def children(self):
        return (self.target,) + ((self.arg,) if self.arg is not None else ())


@dataclass(frozen=True)
class Logic(Query):
    op: str  # and | or | not
    operands: tuple[Query, ...]
    type: str = BOOLEAN
    span: Span | None = field(default=None, compare=False)

    @property
    def children(self):
        return self.operands


@dataclass(frozen=True)
class Compare(Query):
    op: str
    left: Query
    right: Query
    type: str = BOOLEAN
    span: Span | None = field(default=None, compare=False)

    @property
    def children(self):
        return (self.left, self.right)


@dataclass(frozen=True)
class TriggerRef(Query):
    """Call to another boolean TrigIt method of the same class."""

    name: str
    class_name: str
    type: str = BOOLEAN
    span: Span | None = field(default=None, compare=False)


def walk(q: Query):
    yield q
    for c in q.children:
        yield from walk(c)


@dataclass(frozen=True)
class Selector:
    """Fully name-resolved action target."""

    class_name: str
    member_kind: str | None = None  # None (the class itself) | method | field
    member_name: str | None = None

    def describe(self) -> str:
        return self.member_name if self.member_kind else self.class_name


@dataclass(frozen=True)
class ActionStep:
    selector: Selector
    mutation: str  # setPublic | setProtected | setPrivate | setStatic | setFinal | removeMethod | removeField
    arg: bool | None = None
    span: Span | None = field(default=None, compare=False)


@dataclass(frozen=True)
class DiagnosticPrint:
    message: str
    span: Span | None = field(default=None, compare=False)
