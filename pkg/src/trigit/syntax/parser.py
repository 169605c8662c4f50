"""Recursive-descent parser for the supported Java subset.

Grammar (arithmetic and comparison operators are accepted inside
expressions in addition to the logical ones)::

    unit        := packageDecl? importDecl* classDecl+
    classDecl   := annotation* modifier* "class" Ident ("extends" typeRef)?
                   ("implements" typeRef ("," typeRef)*)? "{" member* "}"
    member      := fieldDecl | methodDecl | ctorDecl | staticBlock | classDecl
    methodDecl  := annotation* modifier* (typeRef | "void") Ident "(" params? ")"
                   ("throws" typeRef ("," typeRef)*)? (block | ";")
    stmt        := block | ifStmt | returnStmt | localVar ";" | exprStmt ";"
    expr        := orExpr
    orExpr      := andExpr ("||" andExpr)*
    andExpr     := relExpr ("&&" relExpr)*
    relExpr     := addExpr (("=="|"!="|"<"|">"|"<="|">=") addExpr)*
    addExpr     := mulExpr (("+"|"-") mulExpr)*
    mulExpr     := unary (("*"|"/"|"%") unary)*
    unary       := ("!"|"-") unary | postfix
    postfix     := primary ("." Ident callArgs?)*
"""
from __future__ import annotations

from .lexer import Span, Token, tokenize
from .nodes import Node

MODIFIERS = ("public", "protected", "private", "static", "final", "abstract")
PRIMITIVES = ("boolean", "byte", "char", "short", "int", "long", "float", "double")
_REL_OPS = ("==", "!=", "<", ">", "<=", ">=")


class ParseError(Exception):
    def __init__(self, file, line, column, expected, found):
        super().__init__(f"{file}:{line}:{column}: expected {expected}, found {found!r}")
        self.file = file
        self.line = line
        self.column = column
        self.expected = expected
        self.found = found


class _Parser:
    def __init__(self, tokens: list[Token]):
        self.toks = tokens
        self.i = 0
        self.file = tokens[-1].span.file if tokens else "<string>"

    # -- token helpers -------------------------------------------------

    def peek(self, k: int = 0) -> Token:
        j = min(self.i + k, len(self.toks) - 1)
        return self.toks[j]

    def at(self, text: str, k: int = 0) -> bool:
        t = self.peek(k)
        return t.kind != "string-literal" and t.text == text

    def at_ident(self, k: int = 0) -> bool:
        return self.peek(k).kind == "identifier"

    def fail(self, expected: str):
        t = self.peek()
        found = t.text if t.kind != "eof" else "<eof>"
        raise ParseError(self.file, t.span.start_line, t.span.start_col, expected, found)

    def take(self) -> int:
        idx = self.i
        self.i += 1
        return idx

    def expect(self, text: str) -> int:
        if not self.at(text):
            self.fail(repr(text))
        return self.take()

    def expect_ident(self) -> int:
        if not self.at_ident():
            self.fail("identifier")
        return self.take()

    def make(self, kind: str, parts: list, **attrs) -> Node:
        first = last = None
        for p in parts:
            if isinstance(p, int):
                idx = p
            else:
                idx = p.first_token()
            if idx is not None:
                first = idx
                break
        for p in reversed(parts):
            idx = p if isinstance(p, int) else p.last_token()
            if idx is not None:
                last = idx
                break
        if first is not None:
            a, b = self.toks[first].span, self.toks[last].span
            span = Span(a.file, a.start_line, a.start_col, b.end_line, b.end_col, a.start, b.end)
        else:
            # empty node (e.g. no modifiers): zero width, just before the next token
            a = self.peek().span
            span = Span(a.file, a.start_line, a.start_col, a.start_line, a.start_col, a.start, a.start)
        return Node(kind, parts, span, attrs)

    def text_of(self, parts: list) -> str:
        idxs = []
        for p in parts:
            idxs.extend([p] if isinstance(p, int) else p.token_indices())
        if not idxs:
            return ""
        out = [self.toks[idxs[0]].text]
        for k in idxs[1:]:
            out.append(self.toks[k].trivia_text + self.toks[k].text)
        return "".join(out)

    # -- compilation unit ---------------------------------------------

    def unit(self) -> Node:
        parts: list = []
        if self.at("package"):
            parts.append(self.package_decl())
        while self.at("import"):
            parts.append(self.import_decl())
        if self.peek().kind == "eof":
            self.fail("class declaration")
        while self.peek().kind != "eof":
            parts.append(self.class_decl())
        parts.append(self.take())  # eof sentinel owns trailing trivia
        return self.make("CompilationUnit", parts)

    def qualified_name(self) -> list[int]:
        parts = [self.expect_ident()]
        while self.at(".") and self.at_ident(1):
            parts.append(self.take())
            parts.append(self.take())
        return parts

    def package_decl(self) -> Node:
        parts = [self.take()]
        qn = self.qualified_name()
        parts += qn
        parts.append(self.expect(";"))
        return self.make("PackageDecl", parts, name=self.text_of(qn))

    def import_decl(self) -> Node:
        parts = [self.take()]
        static = False
        if self.at("static"):
            parts.append(self.take())
            static = True
        qn = self.qualified_name()
        parts += qn
        name = self.text_of(qn)
        if self.at(".") and self.at("*", 1):
            parts += [self.take(), self.take()]
            name += ".*"
        parts.append(self.expect(";"))
        return self.make("ImportDecl", parts, name=name, static=static)

    # -- declarations -------------------------------------------------

    def annotation(self) -> Node:
        parts = [self.take()]
        name_idx = self.expect_ident()
        parts.append(name_idx)
        if self.at("("):
            depth = 0
            while True:
                t = self.peek()
                if t.kind == "eof":
                    self.fail("')'")
                if self.at("("):
                    depth += 1
                elif self.at(")"):
                    depth -= 1
                parts.append(self.take())
                if depth == 0:
                    break
        return self.make("Annotation", parts, name=self.toks[name_idx].text)

    def annotations_and_modifiers(self) -> tuple[list[Node], Node]:
        annos = []
        while self.peek().kind == "annotation-marker":
            annos.append(self.annotation())
        mods = []
        while self.peek().text in MODIFIERS and self.peek().kind == "keyword":
            if self.at("static") and self.at("{", 1):
                break
            mods.append(self.take())
        mod_node = self.make("ModifierList", mods,
                             mods=tuple(self.toks[m].text for m in mods))
        return annos, mod_node

    def class_decl(self) -> Node:
        annos, mods = self.annotations_and_modifiers()
        return self.class_rest(annos, mods)

    def class_rest(self, annos, mods) -> Node:
        parts: list = [*annos, mods, self.expect("class")]
        name_idx = self.expect_ident()
        parts.append(name_idx)
        name = self.toks[name_idx].text
        if self.at("extends"):
            parts.append(self.take())
            parts.append(self.typeref("extends"))
        if self.at("implements"):
            parts.append(self.take())
            parts.append(self.typeref("implements"))
            while self.at(","):
                parts.append(self.take())
                parts.append(self.typeref("implements"))
        parts.append(self.expect("{"))
        while not self.at("}"):
            if self.peek().kind == "eof":
                self.fail("'}'")
            parts.append(self.member(name))
        parts.append(self.take())
        return self.make("ClassDecl", parts, name=name)

    def member(self, class_name: str) -> Node:
        if self.at("static") and self.at("{", 1):
            kw = self.take()
            return self.make("StaticBlock", [kw, self.block()])
        annos, mods = self.annotations_and_modifiers()
        if self.at("class"):
            return self.class_rest(annos, mods)
        if self.at_ident() and self.peek().text == class_name and self.at("(", 1):
            name_idx = self.take()
            return self.method_rest(annos, mods, None, name_idx, constructor=True)
        if self.at("void"):
            rtype = self.make("TypeRef", [self.take()], role="return", text="void")
        else:
            rtype = self.typeref("return")
        name_idx = self.expect_ident()
        if self.at("("):
            return self.method_rest(annos, mods, rtype, name_idx)
        rtype.attrs["role"] = "field"
        parts: list = [*annos, mods, rtype, name_idx]
        if self.at("="):
            parts.append(self.take())
            parts.append(self.expr())
        parts.append(self.expect(";"))
        return self.make("FieldDecl", parts, name=self.toks[name_idx].text)

    def method_rest(self, annos, mods, rtype, name_idx, constructor=False) -> Node:
        parts: list = [*annos, mods]
        if rtype is not None:
            parts.append(rtype)
        parts.append(name_idx)
        parts.append(self.expect("("))
        if not self.at(")"):
            parts.append(self.param())
            while self.at(","):
                parts.append(self.take())
                parts.append(self.param())
        parts.append(self.expect(")"))
        if self.at("throws"):
            parts.append(self.take())
            parts.append(self.typeref("throws"))
            while self.at(","):
                parts.append(self.take())
                parts.append(self.typeref("throws"))
        if self.at(";"):
            parts.append(self.take())
        else:
            parts.append(self.block())
        return self.make("MethodDecl", parts, name=self.toks[name_idx].text,
                         constructor=constructor)

    def param(self) -> Node:
        t = self.typeref("param")
        n = self.expect_ident()
        return self.make("Param", [t, n], name=self.toks[n].text)

    def typeref(self, role: str) -> Node:
        t = self.peek()
        if not (t.kind == "identifier" or t.text in PRIMITIVES):
            self.fail("type")
        parts = [self.take()]
        while self.at(".") and self.at_ident(1):
            parts += [self.take(), self.take()]
        if self.at("<"):
            depth = 0
            while True:
                if self.peek().kind == "eof":
                    self.fail("'>'")
                if self.at("<"):
                    depth += 1
                elif self.at(">"):
                    depth -= 1
                elif not (self.at_ident() or self.at(",") or self.at(".") or self.at("?")
                          or self.at("extends") or self.at("super") or self.at("[")
                          or self.at("]") or self.peek().text in PRIMITIVES):
                    self.fail("type argument")
                parts.append(self.take())
                if depth == 0:
                    break
        while self.at("[") and self.at("]", 1):
            parts += [self.take(), self.take()]
        return self.make("TypeRef", parts, role=role, text=self.text_of(parts))

    # -- statements ---------------------------------------------------

    def block(self) -> Node:
        parts: list = [self.expect("{")]
        while not self.at("}"):
            if self.peek().kind == "eof":
                self.fail("'}'")
            parts.append(self.stmt())
        parts.append(self.take())
        return self.make("Block", parts)

    def stmt(self) -> Node:
        if self.at("{"):
            return self.block()
        if self.at("if"):
            return self.if_stmt()
        if self.at("return"):
            parts: list = [self.take()]
            if not self.at(";"):
                parts.append(self.expr())
            parts.append(self.expect(";"))
            return self.make("ReturnStmt", parts)
        local = self.try_local_var()
        if local is not None:
            return local
        e = self.expr()
        if self.at("=") and e.kind in ("NameRef", "MemberAccess"):
            eq = self.take()
            e = self.make("Assignment", [e, eq, self.expr()])
        return self.make("ExprStmt", [e, self.expect(";")])

    def try_local_var(self) -> Node | None:
        t = self.peek()
        if not (t.kind == "identifier" or t.text in PRIMITIVES):
            return None
        save = self.i
        try:
            ty = self.typeref("local")
        except ParseError:
            self.i = save
            return None
        if not (self.at_ident() and (self.at("=", 1) or self.at(";", 1))):
            self.i = save
            return None
        name_idx = self.take()
        parts: list = [ty, name_idx]
        if self.at("="):
            parts.append(self.take())
            parts.append(self.expr())
        parts.append(self.expect(";"))
        return self.make("LocalVarStmt", parts, name=self.toks[name_idx].text)

    def if_stmt(self) -> Node:
        parts: list = [self.take(), self.expect("(")]
        parts.append(self.expr())
        parts.append(self.expect(")"))
        parts.append(self.stmt())
        has_else = False
        if self.at("else"):
            parts.append(self.take())
            parts.append(self.stmt())
            has_else = True
        return self.make("IfStmt", parts, has_else=has_else)

    # -- expressions --------------------------------------------------

    def expr(self) -> Node:
        return self.binary_level(0)

    _LEVELS = (("||",), ("&&",), _REL_OPS, ("+", "-"), ("*", "/", "%"))

    def binary_level(self, level: int) -> Node:
        if level == len(self._LEVELS):
            return self.unary()
        ops = self._LEVELS[level]
        left = self.binary_level(level + 1)
        while self.peek().kind == "punctuation" and self.peek().text in ops:
            op_idx = self.take()
            right = self.binary_level(level + 1)
            left = self.make("BinaryExpr", [left, op_idx, right], op=self.toks[op_idx].text)
        return left

    def unary(self) -> Node:
        if self.at("!") or self.at("-"):
            op_idx = self.take()
            return self.make("UnaryExpr", [op_idx, self.unary()], op=self.toks[op_idx].text)
        return self.postfix()

    def call_args(self) -> list:
        parts: list = [self.expect("(")]
        if not self.at(")"):
            parts.append(self.expr())
            while self.at(","):
                parts.append(self.take())
                parts.append(self.expr())
        parts.append(self.expect(")"))
        return parts

    def postfix(self) -> Node:
        node = self.primary()
        while self.at("."):
            dot = self.take()
            name_idx = self.expect_ident()
            name = self.toks[name_idx].text
            if self.at("("):
                node = self.make("CallChain", [node, dot, name_idx, *self.call_args()],
                                 name=name, has_target=True)
            else:
                node = self.make("MemberAccess", [node, dot, name_idx], name=name)
        return node

    def primary(self) -> Node:
        t = self.peek()
        if t.kind in ("string-literal", "number-literal") or t.text in ("true", "false", "null"):
            idx = self.take()
            if t.kind == "string-literal":
                lk, value = "string", t.value
            elif t.kind == "number-literal":
                lk, value = "number", t.text
            elif t.text == "null":
                lk, value = "null", None
            else:
                lk, value = "boolean", t.text == "true"
            return self.make("Literal", [idx], literal_kind=lk, value=value, origin="source")
        if t.kind == "identifier":
            idx = self.take()
            if self.at("("):
                return self.make("CallChain", [idx, *self.call_args()],
                                 name=t.text, has_target=False)
            return self.make("NameRef", [idx], name=t.text)
        if self.at("this"):
            return self.make("ThisRef", [self.take()])
        if self.at("("):
            parts = [self.take(), self.expr()]
            parts.append(self.expect(")"))
            return self.make("ParenExpr", parts)
        self.fail("expression")


def parse_compilation_unit(tokens: list[Token]) -> Node:
    """Parse a token stream from :func:`tokenize` into a CompilationUnit."""
    return _Parser(tokens).unit()


def parse_source(source: str, file: str = "<string>") -> tuple[list[Token], Node]:
    tokens = tokenize(source, file)
    return tokens, parse_compilation_unit(tokens)


def parse_expression(source: str, file: str = "<expr>") -> tuple[list[Token], Node]:
    """Parse a standalone expression; the whole input must be consumed."""
    tokens = tokenize(source, file)
    p = _Parser(tokens)
    node = p.expr()
    if p.peek().kind != "eof":
        p.fail("end of expression")
    return tokens, node


def call_target(node: Node) -> Node | None:
    """Receiver of a CallChain, or None for an unqualified call."""
    if node.attrs.get("has_target"):
        return node.children[0]
    return None


def call_args(node: Node) -> list[Node]:
    kids = node.children
    return kids[1:] if node.attrs.get("has_target") else kids


def if_parts(node: Node) -> tuple[Node, Node, Node | None]:
    kids = node.children
    return kids[0], kids[1], kids[2] if len(kids) > 2 else None
