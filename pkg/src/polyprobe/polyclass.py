"""Deterministic logistic-regression probes for polysemy level.

Words are classified as mono/poly (binary) or into four polysemy bands from
similarity-derived features: the scalar self-similarity of a word's pool, or
the 45 pairwise cosines among its ten instance vectors.  Baselines: always
predicting one class, and a single log-frequency feature.  The probe is a
multinomial softmax regression with an L2 penalty, z-scored features, and a
full-batch deterministic optimizer, so a seed plus data fixes the weights,
the accuracies, and the layer chosen on the development set.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from typing import Mapping, Sequence

import numpy as np
from scipy.optimize import minimize
from scipy.special import logsumexp

from .embedding_store import EmbeddingArchive
from .errors import DomainError
from .pool_builder import PoolDataset, POOL_SIZE
from .simstats import cosine_matrix, self_sim

N_PAIR_FEATURES = POOL_SIZE * (POOL_SIZE - 1) // 2  # 45

DEFAULT_RATIOS = (0.70, 0.15, 0.15)
SPLIT_NAMES = ("train", "dev", "test")


# ---------------------------------------------------------------------------
# Features
# ---------------------------------------------------------------------------

def pair_cos_features(matrix: np.ndarray) -> np.ndarray:
    """The 45 pairwise cosines of a ten-row matrix, sorted descending.

    Sorting makes the feature invariant to instance order; its mean equals
    the matrix's self-similarity by construction.
    """
    m = np.asarray(matrix)
    if m.ndim != 2 or m.shape[0] != POOL_SIZE:
        raise DomainError(f"expected a {POOL_SIZE}-row matrix, got shape {m.shape}")
    sims = cosine_matrix(m)
    iu = np.triu_indices(POOL_SIZE, k=1)
    return np.sort(sims[iu])[::-1].copy()


def selfsim_feature(matrix: np.ndarray) -> np.ndarray:
    return np.array([self_sim(matrix)], dtype=np.float64)


def log_frequency_feature(count: float | None) -> np.ndarray:
    # Missing frequencies are smoothed to a count of one.
    c = 1 if count is None else count
    return np.array([math.log(c + 1.0)], dtype=np.float64)


# ---------------------------------------------------------------------------
# Splits
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class DatasetSplit:
    train: tuple
    dev: tuple
    test: tuple
    ratios: tuple[float, float, float] = DEFAULT_RATIOS

    def sizes(self) -> tuple[int, int, int]:
        return (len(self.train), len(self.dev), len(self.test))


def _largest_remainder(n: int, ratios: Sequence[float]) -> list[int]:
    exact = [n * r for r in ratios]
    counts = [int(math.floor(e)) for e in exact]
    leftover = n - sum(counts)
    by_fraction = sorted(range(len(ratios)), key=lambda i: (-(exact[i] - counts[i]), i))
    for i in by_fraction[:leftover]:
        counts[i] += 1
    return counts


def split(
    labels: Mapping, ratios: Sequence[float] = DEFAULT_RATIOS, rng: np.random.Generator = None
) -> DatasetSplit:
    """Stratified disjoint train/dev/test split with largest-remainder rounding.

    Every class is allocated independently, so class proportions are
    preserved within each part up to one lemma.
    """
    if rng is None:
        raise DomainError("split requires a seeded generator")
    ratios = tuple(float(r) for r in ratios)
    if len(ratios) != 3 or any(r < 0 for r in ratios) or abs(sum(ratios) - 1.0) > 1e-9:
        raise DomainError(f"ratios must be three non-negative values summing to 1, got {ratios}")
    by_class: dict = {}
    for key in sorted(labels):
        by_class.setdefault(labels[key], []).append(key)
    if not by_class:
        raise DomainError("no labelled lemmas")
    for cls, keys in by_class.items():
        if len(keys) == 0:
            raise DomainError(f"class {cls!r} has no members")

    parts: list[list] = [[], [], []]
    for cls in sorted(by_class, key=str):
        keys = by_class[cls]
        counts = _largest_remainder(len(keys), ratios)
        perm = rng.permutation(len(keys))
        shuffled = [keys[int(i)] for i in perm]
        start = 0
        for part, count in zip(parts, counts):
            part.extend(shuffled[start : start + count])
            start += count
    return DatasetSplit(
        train=tuple(parts[0]), dev=tuple(parts[1]), test=tuple(parts[2]), ratios=ratios
    )


def balance_classes(labels: Mapping, rng: np.random.Generator) -> dict:
    """Subsample every class to the size of the smallest one."""
    by_class: dict = {}
    for key in sorted(labels):
        by_class.setdefault(labels[key], []).append(key)
    quota = min(len(keys) for keys in by_class.values())
    kept = {}
    for cls in sorted(by_class, key=str):
        keys = by_class[cls]
        chosen = rng.choice(len(keys), size=quota, replace=False)
        for i in chosen:
            kept[keys[int(i)]] = cls
    return kept


# ---------------------------------------------------------------------------
# Softmax regression
# ---------------------------------------------------------------------------

def softmax_loss_grad(
    params: np.ndarray, X: np.ndarray, y: np.ndarray, n_classes: int, l2: float
) -> tuple[float, np.ndarray]:
    """Negative log-likelihood with L2 on weights (bias unpenalized), plus gradient.

    ``params`` is the flat concatenation of the d x C weight matrix and the
    C-vector of biases.
    """
    n, d = X.shape
    W = params[: d * n_classes].reshape(d, n_classes)
    b = params[d * n_classes :]
    logits = X @ W + b
    lse = logsumexp(logits, axis=1)
    loss = float(np.sum(lse - logits[np.arange(n), y]) + 0.5 * l2 * np.sum(W * W))
    P = np.exp(logits - lse[:, None])
    P[np.arange(n), y] -= 1.0
    grad_W = X.T @ P + l2 * W
    grad_b = P.sum(axis=0)
    return loss, np.concatenate([grad_W.ravel(), grad_b])


@dataclass
class SoftmaxModel:
    classes: tuple
    weights: np.ndarray  # d x C
    bias: np.ndarray  # C
    mean: np.ndarray
    scale: np.ndarray
    kept_columns: np.ndarray
    n_iter: int
    converged: bool

    def predict(self, X: np.ndarray) -> np.ndarray:
        Z = (X[:, self.kept_columns] - self.mean) / self.scale
        logits = Z @ self.weights + self.bias
        return np.argmax(logits, axis=1)


def fit_softmax(
    X: np.ndarray,
    y: np.ndarray,
    n_classes: int,
    l2: float = 1.0,
    tol: float = 1e-8,
    max_iter: int = 1000,
) -> tuple[np.ndarray, np.ndarray, int, bool]:
    """Full-batch L-BFGS fit from a zero start; deterministic given the data."""
    n, d = X.shape
    x0 = np.zeros(d * n_classes + n_classes)
    res = minimize(
        softmax_loss_grad,
        x0,
        args=(X, y, n_classes, l2),
        jac=True,
        method="L-BFGS-B",
        options={"maxiter": max_iter, "gtol": tol, "ftol": 1e-18},
    )
    W = res.x[: d * n_classes].reshape(d, n_classes)
    b = res.x[d * n_classes :]
    return W, b, int(res.nit), bool(res.success)


@dataclass
class AccuracyReport:
    train: float
    dev: float
    test: float
    classes: tuple
    split_sizes: tuple[int, int, int]
    details: dict = field(default_factory=dict)


def _encode(labels: Mapping, keys: Sequence) -> tuple[np.ndarray, tuple]:
    classes = tuple(sorted({labels[k] for k in keys}, key=str))
    index = {cls: i for i, cls in enumerate(classes)}
    return np.array([index[labels[k]] for k in keys]), classes


def train_eval(
    features: Mapping,
    labels: Mapping,
    split_: DatasetSplit,
    l2: float = 1.0,
) -> AccuracyReport:
    """Fit the softmax probe on the train part and report accuracies.

    Features are z-scored with train statistics; constant train columns are
    dropped with a warning (a model with no surviving columns falls back to
    its bias, i.e. the train majority class).
    """
    all_keys = list(split_.train) + list(split_.dev) + list(split_.test)
    y_all, classes = _encode(labels, all_keys)
    X_all = np.vstack([np.asarray(features[k], dtype=np.float64).ravel() for k in all_keys])
    if not np.isfinite(X_all).all():
        raise DomainError("non-finite feature values")

    n_train = len(split_.train)
    n_dev = len(split_.dev)
    X_train = X_all[:n_train]
    mean = X_train.mean(axis=0) if n_train else np.zeros(X_all.shape[1])
    std = X_train.std(axis=0) if n_train else np.zeros(X_all.shape[1])
    kept = np.flatnonzero(std > 0.0)
    if kept.size < X_all.shape[1]:
        warnings.warn(
            f"dropping {X_all.shape[1] - kept.size} constant feature column(s)"
        )
    Z_all = (X_all[:, kept] - mean[kept]) / std[kept]

    W, b, n_iter, converged = fit_softmax(
        Z_all[:n_train], y_all[:n_train], len(classes), l2=l2
    )
    model = SoftmaxModel(
        classes=classes,
        weights=W,
        bias=b,
        mean=mean[kept],
        scale=std[kept],
        kept_columns=kept,
        n_iter=n_iter,
        converged=converged,
    )
    pred = np.argmax(Z_all @ W + b, axis=1)

    def accuracy(lo: int, hi: int) -> float:
        if hi == lo:
            return float("nan")
        return float(np.mean(pred[lo:hi] == y_all[lo:hi]))

    return AccuracyReport(
        train=accuracy(0, n_train),
        dev=accuracy(n_train, n_train + n_dev),
        test=accuracy(n_train + n_dev, len(all_keys)),
        classes=classes,
        split_sizes=split_.sizes(),
        details={"l2": l2, "n_iter": n_iter, "converged": converged, "model": model},
    )


def majority_baseline(labels: Mapping, split_: DatasetSplit) -> AccuracyReport:
    """Always predict the most frequent train class (ties: first sorted)."""
    y_train, classes = _encode(labels, list(split_.train))
    counts = np.bincount(y_train, minlength=len(classes))
    majority = int(np.argmax(counts))

    def accuracy(keys) -> float:
        if not keys:
            return float("nan")
        index = {cls: i for i, cls in enumerate(classes)}
        return float(np.mean([index[labels[k]] == majority for k in keys]))

    return AccuracyReport(
        train=accuracy(split_.train),
        dev=accuracy(split_.dev),
        test=accuracy(split_.test),
        classes=classes,
        split_sizes=split_.sizes(),
        details={"majority_class": classes[majority]},
    )


def frequency_baseline(
    frequencies: Mapping,
    labels: Mapping,
    split_: DatasetSplit,
    l2: float = 1.0,
) -> AccuracyReport:
    """The softmax probe over a single log(count + 1) feature."""
    features = {
        k: log_frequency_feature(frequencies.get(k)) for k in set(labels)
    }
    return train_eval(features, labels, split_, l2=l2)


# ---------------------------------------------------------------------------
# Archive-backed tasks
# ---------------------------------------------------------------------------

def task_labels(dataset: PoolDataset, task: str) -> dict:
    """Per-lemma labels: mono/poly for "binary", the band for "bands"."""
    if task == "binary":
        return {
            lem.key: ("mono" if lem.band == "mono" else "poly") for lem in dataset.lemmas
        }
    if task == "bands":
        return {lem.key: lem.band for lem in dataset.lemmas}
    raise DomainError(f"unknown task {task!r}")


def natural_setting(lem) -> str:
    # Feature pools follow natural corpus occurrence: the mono pool for
    # one-sense words, poly-rand for polysemous words.
    return "mono" if "mono" in lem.pools else "poly-rand"


def features_from_archive(
    archive: EmbeddingArchive,
    dataset: PoolDataset,
    keys: Sequence,
    feature_kind: str,
    layer: int,
) -> dict:
    if feature_kind not in ("selfsim", "paircos"):
        raise DomainError(f"unknown feature kind {feature_kind!r}")
    by_key = {lem.key: lem for lem in dataset.lemmas}
    features = {}
    for key in keys:
        lem = by_key[key]
        matrix = archive.read_vectors(lem.lemma, lem.pos, natural_setting(lem), layer)
        features[key] = (
            selfsim_feature(matrix) if feature_kind == "selfsim" else pair_cos_features(matrix)
        )
    return features


@dataclass
class SweepReport:
    feature_kind: str
    task: str
    dev_by_layer: dict[int, float]
    chosen_layer: int
    test_accuracy: float
    reports: dict[int, AccuracyReport]


def layer_sweep(
    archive: EmbeddingArchive,
    dataset: PoolDataset,
    labels: Mapping,
    feature_kind: str,
    split_: DatasetSplit,
    l2: float = 1.0,
    layers: Sequence[int] | None = None,
    task: str = "",
) -> SweepReport:
    """Train one probe per layer; pick the layer by dev accuracy.

    Ties go to the lowest layer index; the reported test accuracy is the one
    at the chosen layer.
    """
    if layers is None:
        layers = archive.layers()
    keys = list(split_.train) + list(split_.dev) + list(split_.test)
    reports = {}
    for layer in layers:
        features = features_from_archive(archive, dataset, keys, feature_kind, layer)
        reports[layer] = train_eval(features, labels, split_, l2=l2)
    chosen = max(layers, key=lambda layer: (reports[layer].dev, -layer))
    return SweepReport(
        feature_kind=feature_kind,
        task=task,
        dev_by_layer={layer: reports[layer].dev for layer in layers},
        chosen_layer=chosen,
        test_accuracy=reports[chosen].test,
        reports=reports,
    )
