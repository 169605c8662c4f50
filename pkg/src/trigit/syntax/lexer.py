"""Lossless lexer for the supported Java subset.

Every byte of the input ends up either in a token's ``text`` or in the
leading trivia of the following token.  A zero-width ``eof`` token closes
the stream and owns any trailing trivia.
"""
from __future__ import annotations

import bisect
import re
from dataclasses import dataclass, field

KEYWORDS = frozenset("""
abstract assert boolean break byte case catch char class const continue
default do double else enum extends final finally float for goto if
implements import instanceof int interface long native new package private
protected public return short static strictfp super switch synchronized this
throw throws transient try void volatile while true false null
""".split())

# Multi-character operators are listed first so alternation prefers them.
# ">>" is deliberately absent: nested generic closers lex as two ">".
_PUNCT = ["||", "&&", "==", "!=", "<=", ">=", "++", "--", "->", "::",
          "(", ")", "{", "}", "[", "]", ";", ",", ".", "=", "!", "<", ">",
          "+", "-", "*", "/", "%", "&", "|", "?", ":", "^", "~"]

_MASTER = re.compile(r"""
    (?P<ws>[ \t\r\n\f]+)
  | (?P<line>//[^\n]*)
  | (?P<block>/\*.*?\*/)
  | (?P<badblock>/\*)
  | (?P<string>"(?:[^"\\\n]|\\.)*")
  | (?P<badstring>")
  | (?P<char>'(?:[^'\\\n]|\\.)+')
  | (?P<badchar>')
  | (?P<number>0[xX][0-9a-fA-F_]+[lL]?
              |\d[\d_]*(?:\.\d+)?(?:[eE][+-]?\d+)?[lLfFdD]?)
  | (?P<ident>[A-Za-z_$][A-Za-z0-9_$]*)
  | (?P<at>@)
  | (?P<punct>""" + "|".join(re.escape(p) for p in _PUNCT) + r""")
""", re.VERBOSE | re.DOTALL)

_ESCAPES = {"n": "\n", "t": "\t", "r": "\r", "b": "\b", "f": "\f",
            "0": "\0", "'": "'", '"': '"', "\\": "\\"}


class LexError(Exception):
    def __init__(self, file, line, column, message):
        super().__init__(f"{file}:{line}:{column}: {message}")
        self.file = file
        self.line = line
        self.column = column
        self.message = message


@dataclass(frozen=True)
class Span:
    """Source region; lines and columns are 1-based, offsets 0-based."""

    file: str
    start_line: int
    start_col: int
    end_line: int
    end_col: int
    start: int = 0
    end: int = 0

    def contains(self, other: "Span") -> bool:
        return self.start <= other.start and other.end <= self.end


@dataclass(frozen=True)
class Trivia:
    kind: str  # "whitespace" | "line-comment" | "block-comment"
    text: str
    line: int
    start: int


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    span: Span
    trivia: tuple[Trivia, ...] = field(default=())

    @property
    def trivia_text(self) -> str:
        return "".join(t.text for t in self.trivia)

    @property
    def trivia_start(self) -> int:
        return self.trivia[0].start if self.trivia else self.span.start

    @property
    def value(self):
        """Decoded value for literals; raw text otherwise."""
        if self.kind == "string-literal":
            return decode_string(self.text[1:-1])
        return self.text

    def __repr__(self):
        return f"Token({self.kind}, {self.text!r}, {self.span.start_line}:{self.span.start_col})"


def decode_string(body: str) -> str:
    out = []
    i = 0
    while i < len(body):
        c = body[i]
        if c == "\\" and i + 1 < len(body):
            nxt = body[i + 1]
            if nxt == "u":
                j = i + 1
                while j < len(body) and body[j] == "u":
                    j += 1
                out.append(chr(int(body[j:j + 4], 16)))
                i = j + 4
                continue
            out.append(_ESCAPES.get(nxt, nxt))
            i += 2
        else:
            out.append(c)
            i += 1
    return "".join(out)


class _Positions:
    def __init__(self, source: str):
        self.starts = [0] + [m.end() for m in re.finditer("\n", source)]

    def at(self, offset: int) -> tuple[int, int]:
        idx = bisect.bisect_right(self.starts, offset) - 1
        return idx + 1, offset - self.starts[idx] + 1


_TRIVIA_KINDS = {"ws": "whitespace", "line": "line-comment", "block": "block-comment"}
_BAD_KINDS = {"badblock": "comment", "badstring": "string literal", "badchar": "character literal"}
_TOKEN_KINDS = {"string": "string-literal", "char": "string-literal", "number": "number-literal",
                "at": "annotation-marker"}


def tokenize(source: str, file: str = "<string>") -> list[Token]:
    """Split ``source`` into tokens, attaching comments and whitespace as trivia.

    The returned list always ends with an ``eof`` token.
    """
    pos = _Positions(source)
    tokens: list[Token] = []
    trivia: list[Trivia] = []
    i = 0
    n = len(source)
    line, line_start = 1, 0  # line number at offset i, and the offset where that line begins
    match = _MASTER.match
    while i < n:
        m = match(source, i)
        if m is None:
            line, col = pos.at(i)
            raise LexError(file, line, col, f"illegal character {source[i]!r}")
        kind = m.lastgroup
        text = m.group()
        end = m.end()
        newlines = text.count("\n")
        if kind in _TRIVIA_KINDS:
            trivia.append(Trivia(_TRIVIA_KINDS[kind], text, line, i))
        elif kind in _BAD_KINDS:
            raise LexError(file, line, i - line_start + 1, f"unterminated {_BAD_KINDS[kind]}")
        else:
            if kind == "ident":
                tkind = "keyword" if text in KEYWORDS else "identifier"
            else:
                tkind = _TOKEN_KINDS.get(kind, "punctuation")
            if newlines:
                el, ec = pos.at(end - 1)
            else:
                el, ec = line, end - line_start
            tokens.append(Token(tkind, text, Span(file, line, i - line_start + 1, el, ec + 1, i, end),
                                tuple(trivia)))
            trivia = []
        if newlines:
            line += newlines
            line_start = i + text.rindex("\n") + 1
        i = end
    line, col = pos.at(n) if n else (1, 1)
    tokens.append(Token("eof", "", Span(file, line, col, line, col, n, n), tuple(trivia)))
    return tokens


def untokenize(tokens: list[Token]) -> str:
    return "".join(t.trivia_text + t.text for t in tokens)
