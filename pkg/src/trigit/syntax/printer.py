"""Printing and structural editing of syntax trees."""
from __future__ import annotations

from .lexer import Token
from .nodes import Node, Text


def print_unit(ast: Node, tokens: list[Token]) -> str:
    """Render ``ast`` back to source.

    Parts that still reference original tokens are emitted with their
    original trivia, so an unedited tree reproduces the input exactly.
    """
    out: list[str] = []
    _emit(ast, tokens, out)
    return "".join(out)


def _emit(node: Node, tokens: list[Token], out: list[str]) -> None:
    for p in node.parts:
        if isinstance(p, int):
            tok = tokens[p]
            out.append(tok.trivia_text)
            out.append(tok.text)
        elif isinstance(p, Text):
            out.append(p.text)
        else:
            _emit(p, tokens, out)


def node_text(node: Node, tokens: list[Token]) -> str:
    """Source text of ``node`` without the first token's leading trivia."""
    full = print_unit(node, tokens)
    leaf = _first_leaf(node)
    if isinstance(leaf, int):
        return full[len(tokens[leaf].trivia_text):]
    return full


def _first_leaf(node: Node):
    for p in node.parts:
        if isinstance(p, Node):
            leaf = _first_leaf(p)
            if leaf is not None:
                return leaf
        else:
            return p
    return None


def line_indent(source: str, offset: int) -> str:
    start = source.rfind("\n", 0, offset) + 1
    i = start
    while i < len(source) and source[i] in " \t":
        i += 1
    return source[start:i]


def canonical(texts: list[str]) -> str:
    """Canonical rendering for synthesized code: single spaces, no space
    around ``.``, ``(``/``)`` hugging their contents, ``;``/``,`` glued left."""
    out = ""
    prev = ""
    for t in texts:
        if not out:
            out = t
        elif t in (".", ")", ";", ",", "(") or prev in (".", "(", "!"):
            out += t
        else:
            out += " " + t
        prev = t
    return out


# -- structural edits ------------------------------------------------------

def _map_parts(node: Node, fn) -> Node:
    return node.replace(parts=[fn(p) for p in node.parts])


def replace_token(ast: Node, index: int, text: str, tokens: list[Token]) -> Node:
    """Swap the text of one token, keeping its leading trivia."""
    repl = Text(tokens[index].trivia_text + text)

    def visit(n: Node) -> Node:
        changed = False
        parts = []
        for p in n.parts:
            if isinstance(p, int) and p == index:
                parts.append(repl)
                changed = True
            elif isinstance(p, Node):
                q = visit(p)
                changed = changed or q is not p
                parts.append(q)
            else:
                parts.append(p)
        return n.replace(parts=parts) if changed else n

    return visit(ast)


def remove_node(ast: Node, target: Node) -> Node:
    """Drop ``target`` (and the trivia its first token owns) from the tree."""

    def visit(n: Node) -> Node:
        changed = False
        parts = []
        for p in n.parts:
            if p is target:
                changed = True
                continue
            if isinstance(p, Node):
                q = visit(p)
                changed = changed or q is not p
                parts.append(q)
            else:
                parts.append(p)
        return n.replace(parts=parts) if changed else n

    return visit(ast)


def replace_node(ast: Node, target: Node, new: Node) -> Node:
    def visit(n: Node) -> Node:
        changed = False
        parts = []
        for p in n.parts:
            if p is target:
                parts.append(new)
                changed = True
            elif isinstance(p, Node):
                q = visit(p)
                changed = changed or q is not p
                parts.append(q)
            else:
                parts.append(p)
        return n.replace(parts=parts) if changed else n

    return visit(ast)
