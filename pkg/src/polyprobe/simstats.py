"""Similarity metrics over instance vectors and the significance protocol.

Self-similarity of a word is the mean pairwise cosine over its ten instance
vectors at one layer; random-pair similarity over distinct words probes the
anisotropy of the space, and their difference locates layers where high
similarities are an artefact of a narrow cone rather than shared meaning.

Group comparisons run Shapiro-Wilk on both samples and fall through from
Welch's t-test to a two-sided Mann-Whitney U when normality fails; families
of p-values are adjusted with the Benjamini-Hochberg step-up procedure.
All computation is float64 regardless of storage precision.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from typing import Mapping, Sequence

import numpy as np
from scipy import stats

from .embedding_store import EmbeddingArchive
from .errors import DomainError
from .pool_builder import BANDS, PoolDataset, SETTINGS
from .util import thread_map


# ---------------------------------------------------------------------------
# Cosine machinery
# ---------------------------------------------------------------------------

def cosine_matrix(matrix: np.ndarray) -> np.ndarray:
    """Pairwise cosine similarities between rows, clipped to [-1, 1].

    Computed as G_ij / sqrt(G_ii * G_jj) so bitwise-identical rows score
    exactly 1.0 (sqrt(fl(s*s)) == s in round-to-nearest binary arithmetic).
    """
    m = np.asarray(matrix, dtype=np.float64)
    if m.ndim != 2 or m.shape[0] < 2:
        raise DomainError(f"need a 2-D matrix with >= 2 rows, got shape {m.shape}")
    if not np.isfinite(m).all():
        raise DomainError("matrix contains non-finite values")
    gram = m @ m.T
    diag = np.diag(gram).copy()
    if np.any(diag == 0.0):
        raise DomainError("zero-norm row: cosine undefined")
    return np.clip(gram / np.sqrt(np.outer(diag, diag)), -1.0, 1.0)


def cosine_distance_matrix(matrix: np.ndarray) -> np.ndarray:
    dist = 1.0 - cosine_matrix(matrix)
    np.fill_diagonal(dist, 0.0)
    return np.maximum(dist, 0.0)


def self_sim(matrix: np.ndarray) -> float:
    """Mean cosine over all ordered pairs of distinct rows (in [-1, 1])."""
    sims = cosine_matrix(matrix)
    n = sims.shape[0]
    return float((sims.sum() - np.trace(sims)) / (n * n - n))


# ---------------------------------------------------------------------------
# Layer profiles
# ---------------------------------------------------------------------------

@dataclass
class LayerProfile:
    """Per-layer mean self-similarity for one group of lemmas."""

    group: str
    scores: dict[int, float]
    n: int


def _pool_for(lem, pool_setting: str) -> str | None:
    if "mono" in lem.pools:
        return "mono"
    if pool_setting in lem.pools:
        return pool_setting
    return None


def layer_profiles(
    archive: EmbeddingArchive,
    dataset: PoolDataset,
    grouping: str,
    pool_setting: str = "poly-rand",
    freq_ranges=None,
    include_layer0: bool = False,
) -> list[LayerProfile]:
    """Mean self-similarity per layer for each group of lemmas.

    grouping="setting" compares the four pool settings over their natural
    members (mono pools for one-sense words, each poly pool over the poly
    words).  The other groupings (band, pos, freq-range) fix one pool per
    lemma: the mono pool for one-sense words and ``pool_setting`` for poly
    words.  Empty groups are dropped with a warning.
    """
    layers = archive.layers(include_layer0=include_layer0)

    members: dict[str, list] = {}
    if grouping == "setting":
        for setting in SETTINGS:
            members[setting] = [
                (lem, setting) for lem in dataset.lemmas if setting in lem.pools
            ]
    elif grouping in ("band", "pos", "freq-range"):
        if grouping == "freq-range":
            if freq_ranges is None:
                raise DomainError("freq-range grouping needs freq_ranges")
            missing = [lem.key for lem in dataset.lemmas if lem.frequency is None]
            if missing:
                raise DomainError(f"frequency missing for {missing[0]}")
        for lem in dataset.lemmas:
            setting = _pool_for(lem, pool_setting)
            if setting is None:
                continue
            if grouping == "band":
                label = lem.band
            elif grouping == "pos":
                label = lem.pos
            else:
                label = f"f{freq_ranges.range_of(lem.frequency) + 1}"
            members.setdefault(label, []).append((lem, setting))
    else:
        raise DomainError(f"unknown grouping {grouping!r}")

    order = {
        "setting": list(SETTINGS),
        "band": list(BANDS),
        "pos": ["n", "v", "a", "r"],
        "freq-range": ["f1", "f2", "f3", "f4"],
    }[grouping]

    profiles = []
    for label in order:
        group = members.get(label, [])
        if not group:
            warnings.warn(f"group {label!r} is empty; omitted from profiles")
            continue

        def lemma_scores(item):
            lem, setting = item
            cube = archive.read_all_layers(lem.lemma, lem.pos, setting)
            return [self_sim(cube[archive.block_of(layer)]) for layer in layers]

        per_lemma = np.array(thread_map(lemma_scores, group))
        scores = {layer: float(per_lemma[:, j].mean()) for j, layer in enumerate(layers)}
        profiles.append(LayerProfile(group=label, scores=scores, n=len(group)))
    return profiles


def per_lemma_scores(
    archive: EmbeddingArchive,
    items: Sequence[tuple],
    layer: int,
) -> np.ndarray:
    """Self-similarity of each (lemma, setting) item at one layer."""
    values = [
        self_sim(archive.read_vectors(lem.lemma, lem.pos, setting, layer))
        for lem, setting in items
    ]
    return np.asarray(values, dtype=np.float64)


# ---------------------------------------------------------------------------
# Anisotropy
# ---------------------------------------------------------------------------

def random_pairs(
    keys: Sequence[tuple[str, str]], n_pairs: int, rng: np.random.Generator
) -> list[tuple[tuple[str, str], tuple[str, str]]]:
    """Uniform random pairs of distinct lemmas (with replacement over pairs)."""
    keys = sorted(keys)
    if len(keys) < 2:
        raise DomainError("need at least two lemmas to form pairs")
    pairs = []
    for _ in range(n_pairs):
        i, j = rng.choice(len(keys), size=2, replace=False)
        pairs.append((keys[int(i)], keys[int(j)]))
    return pairs


def _resolve_setting(archive: EmbeddingArchive, key: tuple[str, str]) -> str | None:
    for setting in ("mono", "poly-rand", "poly-bal", "poly-same"):
        if (key[0], key[1], setting) in archive:
            return setting
    return None


def rand_sim_profile(
    archive: EmbeddingArchive,
    pairs: Sequence[tuple[tuple[str, str], tuple[str, str]]],
    rng: np.random.Generator,
    layers: Sequence[int] | None = None,
) -> dict[int, float]:
    """Mean cosine between one random instance of each word in each pair.

    The instance draw is made once per pair and reused across layers, so the
    per-layer values describe the same sample of occurrences.  Pairs with a
    lemma absent from the archive are skipped (warned, counted); an empty
    usable set is an error.
    """
    if layers is None:
        layers = archive.layers()
    usable = []
    skipped = 0
    for key_a, key_b in pairs:
        if key_a == key_b:
            raise DomainError(f"pair with identical lemmas {key_a}")
        setting_a = _resolve_setting(archive, key_a)
        setting_b = _resolve_setting(archive, key_b)
        if setting_a is None or setting_b is None:
            skipped += 1
            continue
        i = int(rng.integers(10))
        j = int(rng.integers(10))
        usable.append((key_a, setting_a, i, key_b, setting_b, j))
    if skipped:
        warnings.warn(f"rand_sim: skipped {skipped} pairs with missing lemmas")
    if not usable:
        raise DomainError("rand_sim: no usable pairs")

    totals = {layer: 0.0 for layer in layers}
    for key_a, setting_a, i, key_b, setting_b, j in usable:
        cube_a = archive.read_all_layers(key_a[0], key_a[1], setting_a)
        cube_b = archive.read_all_layers(key_b[0], key_b[1], setting_b)
        for layer in layers:
            block = archive.block_of(layer)
            u = cube_a[block, i].astype(np.float64)
            v = cube_b[block, j].astype(np.float64)
            nu, nv = np.linalg.norm(u), np.linalg.norm(v)
            if nu == 0.0 or nv == 0.0:
                raise DomainError("zero-norm instance vector in rand_sim")
            totals[layer] += float(np.clip(u @ v / (nu * nv), -1.0, 1.0))
    return {layer: totals[layer] / len(usable) for layer in layers}


def rand_sim(
    archive: EmbeddingArchive,
    pairs: Sequence[tuple[tuple[str, str], tuple[str, str]]],
    layer: int,
    rng: np.random.Generator,
) -> float:
    return rand_sim_profile(archive, pairs, rng, layers=[layer])[layer]


@dataclass
class AnisotropyProfile:
    randsim: dict[int, float]
    diff: dict[int, float]


def aniso_diff(
    selfsim_scores: Mapping[int, float], randsim_scores: Mapping[int, float]
) -> AnisotropyProfile:
    """diff per layer = mean self-similarity minus random-pair similarity."""
    if set(selfsim_scores) != set(randsim_scores):
        raise DomainError(
            f"layer mismatch: {sorted(selfsim_scores)} vs {sorted(randsim_scores)}"
        )
    diff = {layer: selfsim_scores[layer] - randsim_scores[layer] for layer in selfsim_scores}
    return AnisotropyProfile(randsim=dict(randsim_scores), diff=diff)


# ---------------------------------------------------------------------------
# Statistical protocol
# ---------------------------------------------------------------------------

@dataclass
class TestResult:
    statistic: float
    p_value: float
    kind: str  # "t" or "mann-whitney"
    n_a: int
    n_b: int
    p_adjusted: float | None = None


def compare_groups(
    sample_a: Sequence[float],
    sample_b: Sequence[float],
    alpha_normality: float = 0.05,
) -> TestResult:
    """Two-sided two-sample test with a Shapiro-Wilk normality gate.

    Both samples normal at ``alpha_normality``: Welch's unequal-variance
    t-test.  Otherwise (including constant samples, where Shapiro-Wilk is
    undefined): Mann-Whitney U, exact for small tie-free samples and the
    tie- and continuity-corrected normal approximation beyond that.
    """
    a = np.asarray(sample_a, dtype=np.float64)
    b = np.asarray(sample_b, dtype=np.float64)
    if a.size < 3 or b.size < 3:
        raise DomainError("each sample needs >= 3 values for the normality gate")

    def is_normal(x: np.ndarray) -> bool:
        if np.ptp(x) == 0.0:
            return False
        return stats.shapiro(x).pvalue > alpha_normality

    if is_normal(a) and is_normal(b):
        res = stats.ttest_ind(a, b, equal_var=False)
        kind = "t"
    else:
        res = stats.mannwhitneyu(a, b, alternative="two-sided", method="auto")
        kind = "mann-whitney"
    return TestResult(
        statistic=float(res.statistic),
        p_value=float(res.pvalue),
        kind=kind,
        n_a=int(a.size),
        n_b=int(b.size),
    )


def bh_fdr(p_values: Sequence[float]) -> np.ndarray:
    """Benjamini-Hochberg adjusted p-values, returned in input order."""
    p = np.asarray(p_values, dtype=np.float64)
    if p.ndim != 1 or p.size == 0:
        raise DomainError("need a non-empty 1-D p-value list")
    if np.any(p < 0.0) or np.any(p > 1.0) or not np.isfinite(p).all():
        raise DomainError("p-values must lie in [0, 1]")
    m = p.size
    order = np.argsort(p, kind="stable")
    scaled = p[order] * m / np.arange(1, m + 1)
    adjusted_sorted = np.minimum(1.0, np.minimum.accumulate(scaled[::-1])[::-1])
    adjusted = np.empty(m)
    adjusted[order] = adjusted_sorted
    return adjusted


def adjust_results(results: Sequence[TestResult]) -> None:
    """Fill p_adjusted across one family of tests (in place)."""
    if not results:
        return
    adjusted = bh_fdr([r.p_value for r in results])
    for r, adj in zip(results, adjusted):
        r.p_adjusted = float(adj)


def spearman(x: Sequence[float], y: Sequence[float]) -> tuple[float, float]:
    """Tie-aware Spearman rho and its two-sided t-approximation p-value."""
    x = np.asarray(x, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    if x.shape != y.shape or x.ndim != 1:
        raise DomainError("x and y must be 1-D of equal length")
    if x.size < 3:
        raise DomainError("need at least 3 observations")
    if np.ptp(x) == 0.0 or np.ptp(y) == 0.0:
        raise DomainError("spearman undefined for constant input")
    rho, p = stats.spearmanr(x, y)
    return float(rho), float(p)
