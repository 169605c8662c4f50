"""Leave-one-out evaluation, metrics and dataset files."""
from __future__ import annotations

import json
import logging
from dataclasses import asdict, dataclass
from pathlib import Path

import numpy as np

from .embeddings import Embeddings
from .features import featurize
from .logreg import DegenerateDataset, Hyperparameters, train_logreg

log = logging.getLogger(__name__)


class DatasetError(ValueError):
    pass


@dataclass(frozen=True)
class LabeledComment:
    trigger: str
    action: str
    label: bool


@dataclass(frozen=True)
class Metrics:
    accuracy: float
    f1: float
    precision: float
    recall: float
    tp: int
    fp: int
    fn: int
    tn: int

    @classmethod
    def from_counts(cls, tp, fp, fn, tn) -> "Metrics":
        total = tp + fp + fn + tn
        p = tp / (tp + fp) if tp + fp else 0.0
        r = tp / (tp + fn) if tp + fn else 0.0
        f1 = 2 * p * r / (p + r) if p + r else 0.0
        acc = (tp + tn) / total if total else 0.0
        return cls(acc, f1, p, r, tp, fp, fn, tn)

    @classmethod
    def from_predictions(cls, predicted, actual) -> "Metrics":
        tp = fp = fn = tn = 0
        for p, a in zip(predicted, actual):
            if p and a:
                tp += 1
            elif p:
                fp += 1
            elif a:
                fn += 1
            else:
                tn += 1
        return cls.from_counts(tp, fp, fn, tn)

    def to_dict(self) -> dict:
        return asdict(self)


@dataclass
class CrossValidation:
    metrics: Metrics
    folds: int
    probabilities: list[float]
    positives: int
    negatives: int


def load_dataset(path) -> list[LabeledComment]:
    out = []
    with open(Path(path), encoding="utf-8") as fh:
        for no, line in enumerate(fh, start=1):
            if not line.strip():
                continue
            try:
                obj = json.loads(line)
                label = obj["label"]
                if label not in ("yes", "no"):
                    raise ValueError(f"label must be yes or no, not {label!r}")
                out.append(LabeledComment(str(obj["trigger"]), str(obj["action"]), label == "yes"))
            except (ValueError, KeyError, TypeError) as exc:
                raise DatasetError(f"{path}:{no}: {exc}") from None
    return out


def featurize_dataset(data, config="baseline", embeddings: Embeddings | None = None):
    X = np.array([featurize(d.trigger, d.action, config, embeddings).values for d in data])
    y = np.array([d.label for d in data], dtype=float)
    return X, y


def loo_cross_validate(X, y, hyper: Hyperparameters | None = None, on_fold=None) -> CrossValidation:
    """N rounds, each fitting on all rows but one and predicting the held-out row.

    A fold whose training rows carry a single label predicts that training prior.
    """
    hyper = hyper or Hyperparameters()
    X = np.asarray(X, dtype=float)
    y = np.asarray(y, dtype=float)
    n = len(y)
    probs = []
    for i in range(n):
        mask = np.arange(n) != i
        try:
            model = train_logreg(X[mask], y[mask], hyper)
            p = float(model.predict_proba(X[i:i + 1])[0])
        except DegenerateDataset:
            p = float(y[mask].mean()) if mask.any() else 0.5
        probs.append(p)
        if on_fold is not None:
            on_fold(i, p)
    predicted = [p >= hyper.threshold for p in probs]
    metrics = Metrics.from_predictions(predicted, [bool(v) for v in y])
    pos = int(y.sum())
    return CrossValidation(metrics, n, probs, pos, n - pos)


def format_table(rows: dict[str, Metrics]) -> str:
    lines = [f"{'System':<10} {'Accuracy':>8} {'F1 Score':>8} {'Precision':>9} {'Recall':>6}"]
    for name, m in rows.items():
        lines.append(f"{name:<10} {m.accuracy:>8.3f} {m.f1:>8.3f} {m.precision:>9.3f} {m.recall:>6.3f}")
    return "\n".join(lines)
