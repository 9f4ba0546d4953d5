"""Word-sense clusterability: clustering, quality metrics, gold comparison.

A word's instances are clustered with k-means (squared-Euclidean loss,
greedy seeding, best of several restarts) or with average-linkage
agglomerative clustering on a precomputed cosine-distance matrix.  The
cluster count is selected by mean silhouette over k = 2..10.  Clusterability
is then scored three ways: the silhouette itself, the between/within
variance ratio (higher = more clusterable for both), and separability, the
ratio of k-means losses at k and k-1 (lower = more clusterable).  Gold
standards come from usage-similarity judgments: inter-annotator agreement
(mean pairwise Spearman) and the proportion of mid-range ratings.
"""

from __future__ import annotations

import itertools
import warnings
from dataclasses import dataclass
from pathlib import Path
from typing import Mapping, Sequence

import numpy as np
from scipy.spatial.distance import cdist

from .errors import CorpusFormatError, DomainError
from .simstats import spearman

DEFAULT_K_RANGE = range(2, 11)


# ---------------------------------------------------------------------------
# k-means
# ---------------------------------------------------------------------------

@dataclass
class ClusteringSolution:
    assignments: np.ndarray
    k: int
    centroids: np.ndarray | None
    loss: float | None

    def cluster_sizes(self) -> np.ndarray:
        return np.bincount(self.assignments, minlength=self.k)


def _lloyd(X: np.ndarray, centroids: np.ndarray, max_iter: int) -> tuple[np.ndarray, np.ndarray, float]:
    n, _ = X.shape
    k = centroids.shape[0]
    assignments = np.full(n, -1)
    for _ in range(max_iter):
        d2 = cdist(X, centroids, metric="sqeuclidean")
        new_assignments = np.argmin(d2, axis=1)
        # Re-seed empty clusters at the point farthest from its centroid.
        for j in range(k):
            if not np.any(new_assignments == j):
                distances = d2[np.arange(n), new_assignments]
                far = int(np.argmax(distances))
                centroids[j] = X[far]
                d2 = cdist(X, centroids, metric="sqeuclidean")
                new_assignments = np.argmin(d2, axis=1)
        if np.array_equal(new_assignments, assignments):
            break
        assignments = new_assignments
        for j in range(k):
            members = X[assignments == j]
            if len(members):
                centroids[j] = members.mean(axis=0)
    d2 = cdist(X, centroids, metric="sqeuclidean")
    assignments = np.argmin(d2, axis=1)
    loss = float(d2[np.arange(n), assignments].sum())
    return assignments, centroids, loss


def _kmeans_pp_init(X: np.ndarray, k: int, rng: np.random.Generator) -> np.ndarray:
    n = X.shape[0]
    chosen = [int(rng.integers(n))]
    for _ in range(1, k):
        d2 = cdist(X, X[chosen], metric="sqeuclidean").min(axis=1)
        total = d2.sum()
        if total == 0.0:
            # All remaining mass is on already-chosen points; pick uniformly.
            chosen.append(int(rng.integers(n)))
            continue
        chosen.append(int(rng.choice(n, p=d2 / total)))
    return X[chosen].copy()


def kmeans(
    points: np.ndarray,
    k: int,
    rng: np.random.Generator,
    n_init: int = 10,
    max_iter: int = 300,
    init: str = "k-means++",
    extra_starts: Sequence[np.ndarray] = (),
) -> ClusteringSolution:
    """Best-of-restarts k-means; deterministic given the generator state.

    ``init="exhaustive"`` runs Lloyd from every k-subset of the points
    (useful as an optimal-partition search on tiny inputs).  ``extra_starts``
    adds caller-supplied centroid matrices to the restart schedule.
    """
    X = np.asarray(points, dtype=np.float64)
    if X.ndim != 2:
        raise DomainError(f"points must be 2-D, got shape {X.shape}")
    n = X.shape[0]
    if not (1 <= k <= n):
        raise DomainError(f"k must be in 1..{n}, got {k}")

    starts: list[np.ndarray] = [np.asarray(s, dtype=np.float64).copy() for s in extra_starts]
    if init == "exhaustive":
        starts.extend(X[list(combo)].copy() for combo in itertools.combinations(range(n), k))
    elif init == "k-means++":
        starts.extend(_kmeans_pp_init(X, k, rng) for _ in range(n_init))
    else:
        raise DomainError(f"unknown init {init!r}")

    best: tuple[np.ndarray, np.ndarray, float] | None = None
    for start in starts:
        candidate = _lloyd(X, start, max_iter)
        if best is None or candidate[2] < best[2]:
            best = candidate
    assignments, centroids, loss = best
    return ClusteringSolution(assignments=assignments, k=k, centroids=centroids, loss=loss)


# ---------------------------------------------------------------------------
# Agglomerative average linkage
# ---------------------------------------------------------------------------

def _validate_distance_matrix(dist: np.ndarray) -> np.ndarray:
    D = np.asarray(dist, dtype=np.float64)
    if D.ndim != 2 or D.shape[0] != D.shape[1]:
        raise DomainError(f"distance matrix must be square, got shape {D.shape}")
    if not np.isfinite(D).all():
        raise DomainError("distance matrix contains non-finite values")
    if np.any(D < 0.0):
        raise DomainError("distance matrix has negative entries")
    if not np.allclose(D, D.T, atol=1e-12):
        raise DomainError("distance matrix is not symmetric")
    if np.any(np.abs(np.diag(D)) > 1e-12):
        raise DomainError("distance matrix diagonal must be zero")
    return D


def agglomerative(dist: np.ndarray, k: int) -> ClusteringSolution:
    """Average-linkage (UPGMA) merges down to k clusters.

    Ties are broken by the smallest pair of active cluster indices, so the
    merge order is deterministic.  No centroids or loss are defined.
    """
    D = _validate_distance_matrix(dist)
    n = D.shape[0]
    if not (1 <= k <= n):
        raise DomainError(f"k must be in 1..{n}, got {k}")
    clusters: list[list[int]] = [[i] for i in range(n)]
    while len(clusters) > k:
        best_pair = None
        best_link = None
        for i in range(len(clusters)):
            for j in range(i + 1, len(clusters)):
                link = float(D[np.ix_(clusters[i], clusters[j])].mean())
                if best_link is None or link < best_link:
                    best_link = link
                    best_pair = (i, j)
        i, j = best_pair
        clusters[i] = clusters[i] + clusters[j]
        del clusters[j]
    assignments = np.empty(n, dtype=int)
    for label, members in enumerate(clusters):
        assignments[members] = label
    return ClusteringSolution(assignments=assignments, k=k, centroids=None, loss=None)


# ---------------------------------------------------------------------------
# Metrics
# ---------------------------------------------------------------------------

def silhouette(data: np.ndarray, assignments: np.ndarray, metric: str = "euclidean") -> float:
    """Mean silhouette; singletons score 0 by convention.

    ``metric="euclidean"`` treats ``data`` as points; ``"precomputed"``
    treats it as a distance matrix.
    """
    labels = np.asarray(assignments)
    if metric == "euclidean":
        X = np.asarray(data, dtype=np.float64)
        D = cdist(X, X)
    elif metric == "precomputed":
        D = _validate_distance_matrix(data)
    else:
        raise DomainError(f"unknown metric {metric!r}")
    n = D.shape[0]
    if labels.shape != (n,):
        raise DomainError("assignments do not match the data")
    unique = np.unique(labels)
    if unique.size < 2:
        raise DomainError("silhouette needs at least two clusters")
    members = {c: np.flatnonzero(labels == c) for c in unique}
    scores = np.zeros(n)
    for i in range(n):
        own = members[labels[i]]
        if own.size == 1:
            continue  # singleton: s = 0
        a = D[i, own].sum() / (own.size - 1)
        b = min(D[i, members[c]].mean() for c in unique if c != labels[i])
        denom = max(a, b)
        scores[i] = 0.0 if denom == 0.0 else (b - a) / denom
    return float(scores.mean())


def choose_k(
    points: np.ndarray | None = None,
    dist: np.ndarray | None = None,
    method: str = "kmeans",
    k_range: Sequence[int] = DEFAULT_K_RANGE,
    rng: np.random.Generator | None = None,
    n_init: int = 10,
) -> tuple[int, ClusteringSolution, float]:
    """Cluster at each k and keep the highest mean silhouette (ties: smallest k).

    k values above the instance count are skipped; the all-singleton
    solution scores 0 by the singleton convention, so it never beats a
    positive-silhouette clustering.
    """
    if method == "kmeans":
        if points is None or rng is None:
            raise DomainError("kmeans selection needs points and rng")
        n = np.asarray(points).shape[0]
    elif method == "agglomerative":
        if dist is None:
            raise DomainError("agglomerative selection needs a distance matrix")
        n = np.asarray(dist).shape[0]
    else:
        raise DomainError(f"unknown method {method!r}")
    if n < 3:
        raise DomainError("need at least 3 instances to choose k")

    best = None
    for k in k_range:
        if k < 2 or k > n:
            continue
        if method == "kmeans":
            solution = kmeans(points, k, rng, n_init=n_init)
            score = silhouette(points, solution.assignments, metric="euclidean")
        else:
            solution = agglomerative(dist, k)
            score = silhouette(dist, solution.assignments, metric="precomputed")
        if best is None or score > best[2]:
            best = (k, solution, score)
    if best is None:
        raise DomainError(f"no feasible k in {list(k_range)} for {n} instances")
    return best


def variance_ratio(points: np.ndarray, assignments: np.ndarray) -> float | None:
    """Between/within variance ratio; None when all clusters are degenerate."""
    X = np.asarray(points, dtype=np.float64)
    labels = np.asarray(assignments)
    n = X.shape[0]
    overall = X.mean(axis=0)
    within = 0.0
    between = 0.0
    for c in np.unique(labels):
        members = X[labels == c]
        p = members.shape[0] / n
        centroid = members.mean(axis=0)
        within += p * float(np.mean(np.sum((members - centroid) ** 2, axis=1)))
        between += p * float(np.sum((centroid - overall) ** 2))
    if within == 0.0:
        return None
    return between / within


def separability(
    points: np.ndarray,
    k: int,
    rng: np.random.Generator,
    n_init: int = 10,
) -> float | None:
    """loss(k) / loss(k-1) over k-means runs sharing one derived seed.

    The k-clustering's restart schedule additionally starts from the
    (k-1)-solution's centroids plus the point farthest from its centroid,
    which guarantees loss(k) <= loss(k-1) and hence a value in [0, 1).
    Undefined (None) when loss(k-1) is zero.
    """
    if k < 2:
        raise DomainError("separability needs k >= 2")
    X = np.asarray(points, dtype=np.float64)
    seed = int(rng.integers(2**63))
    low = kmeans(X, k - 1, np.random.default_rng(seed), n_init=n_init)
    d2 = cdist(X, low.centroids, metric="sqeuclidean")
    far = int(np.argmax(d2[np.arange(X.shape[0]), low.assignments]))
    augmented = np.vstack([low.centroids, X[far]])
    high = kmeans(
        X, k, np.random.default_rng(seed), n_init=n_init, extra_starts=[augmented]
    )
    if low.loss == 0.0:
        return None
    return high.loss / low.loss


# ---------------------------------------------------------------------------
# Gold usage-similarity scores
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Judgment:
    instance_i: str
    instance_j: str
    annotator: str
    rating: float

    def pair(self) -> tuple[str, str]:
        return tuple(sorted((self.instance_i, self.instance_j)))


@dataclass
class GoldClusterability:
    uiaa: float
    umid: float


MID_RANGE = (2.0, 4.0)  # inclusive


def gold_scores(judgments: Sequence[Judgment]) -> GoldClusterability:
    """Inter-annotator agreement and mid-range proportion for one lemma.

    uiaa is the mean Spearman rho over annotator pairs sharing at least
    three rated instance pairs (pairs where either annotator is constant
    are skipped); umid is the fraction of all ratings in [2, 4].
    """
    if not judgments:
        raise DomainError("no judgments")
    ratings = np.array([j.rating for j in judgments], dtype=np.float64)
    if np.any(ratings < 1.0) or np.any(ratings > 5.0):
        raise DomainError("ratings must lie in [1, 5]")
    umid = float(np.mean((ratings >= MID_RANGE[0]) & (ratings <= MID_RANGE[1])))

    by_annotator: dict[str, dict[tuple[str, str], list[float]]] = {}
    for j in judgments:
        by_annotator.setdefault(j.annotator, {}).setdefault(j.pair(), []).append(j.rating)
    tables = {
        ann: {pair: float(np.mean(vals)) for pair, vals in pairs.items()}
        for ann, pairs in by_annotator.items()
    }
    annotators = sorted(tables)
    if len(annotators) < 2:
        raise DomainError("uiaa needs at least two annotators")

    rhos = []
    for a, b in itertools.combinations(annotators, 2):
        shared = sorted(set(tables[a]) & set(tables[b]))
        if len(shared) < 3:
            continue
        x = [tables[a][pair] for pair in shared]
        y = [tables[b][pair] for pair in shared]
        try:
            rho, _ = spearman(x, y)
        except DomainError:
            continue  # constant annotator on the shared pairs
        rhos.append(rho)
    if not rhos:
        raise DomainError("uiaa undefined: no annotator pair shares >= 3 usable ratings")
    return GoldClusterability(uiaa=float(np.mean(rhos)), umid=umid)


def gold_distance_matrix(judgments: Sequence[Judgment]) -> tuple[np.ndarray, list[str]]:
    """Instance-by-instance distances from mean ratings: (5 - rating) / 4.

    Requires a rating for every instance pair; returns the matrix and the
    sorted instance ids indexing it.
    """
    instances = sorted({j.instance_i for j in judgments} | {j.instance_j for j in judgments})
    index = {inst: i for i, inst in enumerate(instances)}
    n = len(instances)
    sums = np.zeros((n, n))
    counts = np.zeros((n, n))
    for j in judgments:
        a, b = index[j.instance_i], index[j.instance_j]
        if a == b:
            continue
        sums[a, b] += j.rating
        sums[b, a] += j.rating
        counts[a, b] += 1
        counts[b, a] += 1
    missing = (counts == 0) & ~np.eye(n, dtype=bool)
    if missing.any():
        raise DomainError(f"{int(missing.sum() // 2)} instance pairs lack ratings")
    with np.errstate(invalid="ignore"):
        mean = np.where(counts > 0, sums / np.maximum(counts, 1), 0.0)
    D = (5.0 - mean) / 4.0
    np.fill_diagonal(D, 0.0)
    return np.maximum(D, 0.0), instances


def load_usim(path: str | Path) -> dict[str, list[Judgment]]:
    """Read `lemma<TAB>instance_i<TAB>instance_j<TAB>annotator<TAB>rating`."""
    by_lemma: dict[str, list[Judgment]] = {}
    with open(path, encoding="utf-8") as handle:
        for line_number, line in enumerate(handle, start=1):
            line = line.rstrip("\n")
            if not line.strip():
                continue
            parts = line.split("\t")
            if len(parts) != 5:
                raise CorpusFormatError(
                    line_number, "expected lemma<TAB>i<TAB>j<TAB>annotator<TAB>rating"
                )
            lemma, inst_i, inst_j, annotator, raw = parts
            try:
                rating = float(raw)
            except ValueError as exc:
                raise CorpusFormatError(line_number, f"bad rating {raw!r}") from exc
            if not (1.0 <= rating <= 5.0):
                raise CorpusFormatError(line_number, f"rating {rating} outside [1, 5]")
            by_lemma.setdefault(lemma, []).append(Judgment(inst_i, inst_j, annotator, rating))
    return by_lemma


# ---------------------------------------------------------------------------
# Putting it together
# ---------------------------------------------------------------------------

@dataclass
class ClusterabilityScore:
    lemma: str
    representation: str
    layer: int | None
    chosen_k: int
    sil: float
    vr: float | None
    sep: float | None


def score_points(
    points: np.ndarray,
    rng: np.random.Generator,
    method: str = "kmeans",
    dist: np.ndarray | None = None,
    k_range: Sequence[int] = DEFAULT_K_RANGE,
    n_init: int = 10,
) -> tuple[int, float, float | None, float | None]:
    """Cluster one word's vectors and score SIL/VR/SEP at the chosen k."""
    if method == "kmeans":
        k, solution, sil = choose_k(points=points, method="kmeans", k_range=k_range, rng=rng, n_init=n_init)
    else:
        k, solution, sil = choose_k(dist=dist, method="agglomerative", k_range=k_range)
    vr = variance_ratio(points, solution.assignments)
    sep = separability(points, k, rng, n_init=n_init)
    return k, sil, vr, sep


def score_gold_distances(
    dist: np.ndarray, k_range: Sequence[int] = DEFAULT_K_RANGE
) -> tuple[int, float, None, None]:
    """Silhouette-only clusterability for a judgment-derived distance matrix."""
    k, _, sil = choose_k(dist=dist, method="agglomerative", k_range=k_range)
    return k, sil, None, None


def correlate(
    metric_values: Mapping[str, float | None], gold: Mapping[str, float]
) -> tuple[float, float]:
    """Spearman correlation over lemmas with both values defined."""
    keys = sorted(k for k in metric_values if metric_values[k] is not None and k in gold)
    if len(keys) < 3:
        raise DomainError(f"need >= 3 lemmas with defined values, have {len(keys)}")
    x = [metric_values[k] for k in keys]
    y = [gold[k] for k in keys]
    return spearman(x, y)
