"""L2-regularized logistic regression trained by full-batch gradient descent."""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np


class DegenerateDataset(ValueError):
    pass


@dataclass(frozen=True)
class Hyperparameters:
    learning_rate: float = 0.1
    epochs: int = 500
    l2: float = 1e-4
    threshold: float = 0.5


@dataclass
class ClassifierModel:
    weights: np.ndarray
    bias: float
    mean: np.ndarray
    std: np.ndarray
    hyper: Hyperparameters
    loss_trace: list[float] = field(default_factory=list)

    def standardize(self, X) -> np.ndarray:
        X = np.atleast_2d(np.asarray(X, dtype=float))
        keep = self.std > 0
        out = np.zeros_like(X)
        out[:, keep] = (X[:, keep] - self.mean[keep]) / self.std[keep]
        return out

    def predict_proba(self, X) -> np.ndarray:
        return sigmoid(self.standardize(X) @ self.weights + self.bias)

    def predict(self, X) -> np.ndarray:
        return self.predict_proba(X) >= self.hyper.threshold


def sigmoid(z):
    return 0.5 * (1.0 + np.tanh(0.5 * np.asarray(z, dtype=float)))


def loss_and_grad(w, b, X, y, l2):
    """Mean negative log-likelihood plus ``l2/2 * |w|^2``; the bias is not penalized."""
    X = np.asarray(X, dtype=float)
    y = np.asarray(y, dtype=float)
    z = X @ w + b
    loss = float(np.mean(np.logaddexp(0.0, z) - y * z) + 0.5 * l2 * w @ w)
    r = sigmoid(z) - y
    gw = X.T @ r / len(y) + l2 * w
    gb = float(np.mean(r))
    return loss, gw, gb


def train_logreg(X, y, hyper: Hyperparameters | None = None) -> ClassifierModel:
    """Fit on standardized features; zero-variance dimensions keep weight zero."""
    hyper = hyper or Hyperparameters()
    X = np.atleast_2d(np.asarray(X, dtype=float))
    y = np.asarray(y, dtype=float)
    if len(y) < 2 or y.min() == y.max():
        raise DegenerateDataset("training data needs both labels")
    mean = X.mean(axis=0)
    std = X.std(axis=0)
    model = ClassifierModel(np.zeros(X.shape[1]), 0.0, mean, std, hyper)
    Xs = model.standardize(X)
    prior = y.mean()
    w = np.zeros(X.shape[1])
    b = math.log(prior / (1 - prior))
    loss, gw, gb = loss_and_grad(w, b, Xs, y, hyper.l2)
    trace = [loss]
    lr = hyper.learning_rate
    for _ in range(hyper.epochs):
        step = lr
        while True:
            nw, nb = w - step * gw, b - step * gb
            nloss, ngw, ngb = loss_and_grad(nw, nb, Xs, y, hyper.l2)
            if nloss <= loss or step < 1e-12:
                break
            step /= 2
        if nloss > loss:
            # no step decreases the loss; every later epoch would repeat this search unchanged
            trace += [loss] * (hyper.epochs + 1 - len(trace))
            break
        w, b, loss, gw, gb = nw, nb, nloss, ngw, ngb
        trace.append(loss)
    model.weights, model.bias, model.loss_trace = w, b, trace
    return model
