from .lexer import LexError, Span, Token, Trivia, tokenize, untokenize
from .nodes import Node, Text
from .parser import ParseError, parse_compilation_unit, parse_source
from .printer import print_unit

__all__ = ["LexError", "Span", "Token", "Trivia", "tokenize", "untokenize", "Node",
           "Text", "ParseError", "parse_compilation_unit", "parse_source", "print_unit"]
