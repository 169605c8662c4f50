"""Concrete syntax tree for the Java subset.

A node's ``parts`` interleave token indices (into the file's token list),
child nodes and :class:`Text` fragments in source order.  Printing walks
the parts, so a tree that only ever drops or swaps parts still prints
losslessly everywhere it was not touched.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator, Union

from .lexer import Span


@dataclass(frozen=True)
class Text:
    """Synthetic source fragment, printed verbatim."""

    text: str


Part = Union[int, "Node", Text]

MEMBER_KINDS = ("FieldDecl", "MethodDecl", "StaticBlock", "ClassDecl")
EXPR_KINDS = ("CallChain", "MemberAccess", "Literal", "NameRef", "ThisRef",
              "BinaryExpr", "UnaryExpr", "ParenExpr", "Assignment")


@dataclass(eq=False)
class Node:
    kind: str
    parts: list[Part]
    span: Span | None = None
    attrs: dict = field(default_factory=dict)

    @property
    def children(self) -> list["Node"]:
        return [p for p in self.parts if isinstance(p, Node)]

    def child(self, kind: str) -> "Node | None":
        for c in self.children:
            if c.kind == kind:
                return c
        return None

    def children_of(self, *kinds: str) -> list["Node"]:
        return [c for c in self.children if c.kind in kinds]

    @property
    def name(self) -> str | None:
        return self.attrs.get("name")

    def walk(self) -> Iterator["Node"]:
        yield self
        for c in self.children:
            yield from c.walk()

    def token_indices(self) -> list[int]:
        out = []
        for p in self.parts:
            if isinstance(p, int):
                out.append(p)
            elif isinstance(p, Node):
                out.extend(p.token_indices())
        return out

    def first_token(self) -> int | None:
        for p in self.parts:
            if isinstance(p, int):
                return p
            if isinstance(p, Node):
                t = p.first_token()
                if t is not None:
                    return t
        return None

    def last_token(self) -> int | None:
        for p in reversed(self.parts):
            if isinstance(p, int):
                return p
            if isinstance(p, Node):
                t = p.last_token()
                if t is not None:
                    return t
        return None

    def replace(self, parts=None, **attrs) -> "Node":
        merged = dict(self.attrs)
        merged.update(attrs)
        return Node(self.kind, list(self.parts if parts is None else parts), self.span, merged)

    def shape(self):
        """Position-free structural fingerprint used for equality checks."""
        keys = tuple(sorted((k, v) for k, v in self.attrs.items()
                            if k not in ("origin",) and isinstance(v, (str, int, bool, type(None)))))
        return (self.kind, keys, tuple(c.shape() for c in self.children))

    # Convenience accessors for declarations

    @property
    def annotations(self) -> list[str]:
        return [a.name for a in self.children_of("Annotation")]

    @property
    def modifiers(self) -> "Node | None":
        return self.child("ModifierList")

    @property
    def members(self) -> list["Node"]:
        return self.children_of(*MEMBER_KINDS)

    def typeref(self, role: str) -> "Node | None":
        for c in self.children_of("TypeRef"):
            if c.attrs.get("role") == role:
                return c
        return None

    @property
    def params(self) -> list["Node"]:
        return self.children_of("Param")

    @property
    def body(self) -> "Node | None":
        return self.child("Block")

    def __repr__(self):
        extra = f" {self.name}" if self.name else ""
        return f"<{self.kind}{extra}>"
