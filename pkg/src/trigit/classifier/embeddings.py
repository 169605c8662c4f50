"""Word-embedding tables in word2vec text format."""
from __future__ import annotations

import logging
from pathlib import Path

import numpy as np

log = logging.getLogger(__name__)


class FormatError(ValueError):
    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line


class Embeddings:
    def __init__(self, vectors: dict[str, np.ndarray], dim: int):
        self.vectors = vectors
        self.dim = dim

    def __len__(self):
        return len(self.vectors)

    def __contains__(self, word):
        return word.lower() in self.vectors

    def get(self, word: str) -> np.ndarray | None:
        return self.vectors.get(word.lower())


def _is_header(parts: list[str]) -> bool:
    return len(parts) == 2 and all(p.isdigit() for p in parts)


def parse_embeddings(lines) -> Embeddings:
    """Parse ``word v1 .. vD`` rows; an optional first line ``count D`` fixes D."""
    vectors: dict[str, np.ndarray] = {}
    dim = None
    for no, line in enumerate(lines, start=1):
        parts = line.split()
        if not parts:
            continue
        if no == 1 and _is_header(parts):
            dim = int(parts[1])
            continue
        if len(parts) < 2:
            raise FormatError(no, "row has no vector components")
        word, comps = parts[0].lower(), parts[1:]
        if dim is None:
            dim = len(comps)
        if len(comps) != dim:
            raise FormatError(no, f"expected {dim} components, found {len(comps)}")
        try:
            vec = np.array([float(c) for c in comps])
        except ValueError as exc:
            raise FormatError(no, str(exc)) from None
        if word in vectors:
            log.warning("line %d: duplicate word %r, keeping the last occurrence", no, word)
        vectors[word] = vec
    return Embeddings(vectors, dim or 0)


def load_embeddings(path) -> Embeddings:
    with open(Path(path), encoding="utf-8") as fh:
        return parse_embeddings(fh)
