"""Feature vectors for (trigger, action) segment pairs."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .embeddings import Embeddings
from .text import SPECIAL_CLASSES, TAGS, special_token_class, tag_pos, tokenize_text

SEGMENTS = ("trigger", "action")


class MissingEmbeddings(ValueError):
    pass


@dataclass(frozen=True)
class FeatureVector:
    values: np.ndarray
    schema: tuple[str, ...]

    def __len__(self):
        return len(self.values)


def segment_schema(segment: str) -> list[str]:
    return ([f"{segment}.count"] + [f"{segment}.pos.{t}" for t in TAGS]
            + [f"{segment}.special.{c}" for c in SPECIAL_CLASSES])


def feature_schema(config: str = "baseline", dim: int = 0) -> tuple[str, ...]:
    names = segment_schema("trigger") + segment_schema("action")
    if config == "full":
        for seg in SEGMENTS:
            names += [f"{seg}.emb.{i}" for i in range(dim)]
    return tuple(names)


def _lexical_group(tokens: list[str], tags: list[str] | None) -> list[float]:
    n = len(tokens)
    if n == 0:
        return [0.0] * (1 + len(TAGS) + len(SPECIAL_CLASSES))
    tags = tags if tags is not None else tag_pos(tokens)
    pos = [tags.count(t) / n for t in TAGS]
    classes = [special_token_class(t) for t in tokens]
    special = [classes.count(c) / n for c in SPECIAL_CLASSES]
    return [float(n)] + pos + special


def segment_embedding(tokens: list[str], emb: Embeddings) -> np.ndarray:
    """Mean over all tokens; out-of-vocabulary tokens contribute zero vectors."""
    total = np.zeros(emb.dim)
    if not tokens:
        return total
    for t in tokens:
        v = emb.get(t)
        if v is not None:
            total += v
    return total / len(tokens)


def featurize(trigger: str, action: str, config: str = "baseline",
              embeddings: Embeddings | None = None, tags=None) -> FeatureVector:
    """Encode a split comment.

    ``tags`` may supply externally computed POS tags as a (trigger tags, action tags) pair.
    """
    if config not in ("baseline", "full"):
        raise ValueError(f"unknown config {config!r}")
    if config == "full" and embeddings is None:
        raise MissingEmbeddings("the full configuration needs an embedding table")
    toks = [tokenize_text(trigger), tokenize_text(action)]
    values: list[float] = []
    for k, seg in enumerate(toks):
        values += _lexical_group(seg, None if tags is None else list(tags[k]))
    parts = [np.array(values)]
    dim = 0
    if config == "full":
        dim = embeddings.dim
        parts += [segment_embedding(seg, embeddings) for seg in toks]
    return FeatureVector(np.concatenate(parts), feature_schema(config, dim))
