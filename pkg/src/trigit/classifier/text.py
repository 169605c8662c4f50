"""Tokenization, heuristic coarse POS tags and special-token classes."""
from __future__ import annotations

import re
from functools import lru_cache
from importlib import resources

TAGS = ("NOUN", "VERB", "ADJ", "ADV", "PRON", "DET", "ADP", "NUM", "CONJ", "PART", "PUNCT", "X")
SPECIAL_CLASSES = ("stopword", "punctuation", "number", "java-keyword", "java-identifier")

TOKEN = re.compile(r"[A-Za-z_$][A-Za-z0-9_$]*|\d+(?:\.\d+)*|[^\sA-Za-z0-9_$]")
NUMBER = re.compile(r"^[+-]?\d+(?:[.,]\d+)*$")
PUNCT = re.compile(r"^[^\w\s]+$")
CAMEL = re.compile(r"^[a-z]+[A-Z][A-Za-z0-9]*$|^[A-Z][a-z0-9]+[A-Z][A-Za-z0-9]*$")
UPPER = re.compile(r"^[A-Z][A-Z0-9]*_[A-Z0-9_]*$|^[A-Z]{2,}[0-9]*$")


def _load_words(name: str) -> frozenset[str]:
    text = resources.files("trigit.classifier.resources").joinpath(name).read_text(encoding="utf-8")
    return frozenset(w for line in text.splitlines() if (w := line.strip()) and not w.startswith("#"))


@lru_cache(maxsize=None)
def stopwords() -> frozenset[str]:
    return _load_words("stopwords.txt")


@lru_cache(maxsize=None)
def java_keywords() -> frozenset[str]:
    return _load_words("java_keywords.txt")


LEXICON = {
    **dict.fromkeys("the a an this that these those each every some any no all".split(), "DET"),
    **dict.fromkeys("i you he she it we they me him her us them my your his its our their "
                    "mine yours ours theirs who what which whom whose".split(), "PRON"),
    **dict.fromkeys("in on at by for with from of to into onto about over under after before "
                    "during since until via per than without within between through".split(), "ADP"),
    **dict.fromkeys("and or but nor so yet if when once as then while because although unless "
                    "whether".split(), "CONJ"),
    **dict.fromkeys("not n't 's".split(), "PART"),
    **dict.fromkeys("is are was were be been being am do does did have has had can could will "
                    "would should may might must shall use make remove add change delete fix "
                    "move replace keep drop try consider switch support allow get set check "
                    "investigate swap".split(), "VERB"),
    **dict.fromkeys("now here there later ever never still already again also maybe soon "
                    "just only too very".split(), "ADV"),
    **dict.fromkeys("better more less new old available public private protected static final "
                    "required complete possible".split(), "ADJ"),
}


def tokenize_text(text: str) -> list[str]:
    return TOKEN.findall(text)


def is_code_like(token: str) -> bool:
    return bool(CAMEL.match(token) or UPPER.match(token)) or ("_" in token and len(token) > 1)


def tag_token(token: str) -> str:
    low = token.lower()
    if low in LEXICON:
        return LEXICON[low]
    if NUMBER.match(token):
        return "NUM"
    if PUNCT.match(token):
        return "PUNCT"
    if is_code_like(token):
        return "X"
    if low.endswith(("ing", "ed", "ize")) and len(low) > 4:
        return "VERB"
    if low.endswith("ly") and len(low) > 3:
        return "ADV"
    if low.endswith(("ous", "able")) and len(low) > 4:
        return "ADJ"
    return "NOUN"


def tag_pos(tokens: list[str]) -> list[str]:
    """One tag from ``TAGS`` per token; lexicon first, then shape and suffix rules."""
    return [tag_token(t) for t in tokens]


def special_token_class(token: str) -> str:
    """First matching class among ``SPECIAL_CLASSES``, or ``other``."""
    if token.lower() in stopwords():
        return "stopword"
    if PUNCT.match(token):
        return "punctuation"
    if NUMBER.match(token):
        return "number"
    if token in java_keywords():
        return "java-keyword"
    if is_code_like(token):
        return "java-identifier"
    return "other"
