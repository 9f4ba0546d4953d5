"""Substitute-based instance vectors and the paraphrase chain filter.

An instance of a word is represented sparsely over the lexical substitutes
proposed for the word: gold vectors carry annotator counts, automatic
vectors carry model cosine scores for ranked candidates.  Automatic rankings
are truncated by a chain rule: scanning adjacent candidates from the top,
everything from the first pair unrelated in the paraphrase lexicon onwards
is discarded, keeping only a high-ranked, mutually related prefix.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Mapping, Sequence

import numpy as np

from .errors import CorpusFormatError, DomainError


@dataclass(frozen=True)
class SubstituteVector:
    instance_id: str
    dims: Mapping[str, float]
    source: str  # "gold" or "auto"

    def __post_init__(self):
        if self.source not in ("gold", "auto"):
            raise DomainError(f"unknown source {self.source!r}")


class ParaphraseRelation:
    """Undirected related-word pairs; self-pairs are accepted but ignored."""

    def __init__(self, pairs: Iterable[tuple[str, str]] = ()):
        self._pairs: set[frozenset[str]] = set()
        for a, b in pairs:
            self.add(a, b)

    def add(self, a: str, b: str) -> None:
        if a == b:
            return
        self._pairs.add(frozenset((a, b)))

    def related(self, a: str, b: str) -> bool:
        return frozenset((a, b)) in self._pairs

    def __len__(self) -> int:
        return len(self._pairs)

    @classmethod
    def from_tsv(cls, path: str | Path) -> "ParaphraseRelation":
        relation = cls()
        with open(path, encoding="utf-8") as handle:
            for line_number, line in enumerate(handle, start=1):
                line = line.rstrip("\n")
                if not line.strip():
                    continue
                parts = line.split("\t")
                if len(parts) != 2:
                    raise CorpusFormatError(line_number, "expected word1<TAB>word2")
                relation.add(parts[0], parts[1])
        return relation


def filter_chain(ranking: Sequence[str], relations: ParaphraseRelation) -> list[str]:
    """Retain the ranking prefix up to the first unrelated adjacent pair.

    A fully related chain is retained whole; a single candidate is retained
    as-is; an empty ranking yields an empty result.
    """
    ranking = list(ranking)
    if len(set(ranking)) != len(ranking):
        raise DomainError("ranking contains duplicate candidates")
    for i in range(len(ranking) - 1):
        if not relations.related(ranking[i], ranking[i + 1]):
            return ranking[: i + 1]
    return ranking


def build_auto_vector(
    instance_id: str,
    scored_candidates: Sequence[tuple[str, float]],
    relations: ParaphraseRelation,
) -> SubstituteVector:
    """Chain-filter a scored ranking and keep the survivors' cosine scores.

    Ties in the incoming scores are broken lexicographically before the
    scan, so the retained prefix is deterministic.
    """
    ordered = sorted(scored_candidates, key=lambda cs: (-cs[1], cs[0]))
    retained = filter_chain([c for c, _ in ordered], relations)
    scores = dict(ordered)
    dims = {c: float(scores[c]) for c in retained}
    if not dims:
        warnings.warn(f"instance {instance_id}: no candidates survived the chain filter")
    return SubstituteVector(instance_id=instance_id, dims=dims, source="auto")


def build_gold_vector(instance_id: str, annotations: Mapping[str, int]) -> SubstituteVector:
    """Sparse vector of annotator counts per proposed substitute."""
    dims = {}
    for substitute, count in annotations.items():
        if count <= 0:
            raise DomainError(f"annotator count for {substitute!r} must be positive")
        dims[substitute] = float(count)
    return SubstituteVector(instance_id=instance_id, dims=dims, source="gold")


def vectors_to_matrix(vectors: Sequence[SubstituteVector]) -> tuple[np.ndarray, list[str]]:
    """Densify one lemma's substitute vectors.

    Columns are the union of substitutes in lexicographic order; rows follow
    the input instance order.  All-zero rows are permitted but flagged, since
    cosine-based clustering cannot use them; an all-zero matrix is an error.
    """
    if not vectors:
        raise DomainError("no substitute vectors")
    dims = sorted({s for v in vectors for s in v.dims})
    matrix = np.zeros((len(vectors), len(dims)))
    column = {s: i for i, s in enumerate(dims)}
    for row, vector in enumerate(vectors):
        for substitute, value in vector.dims.items():
            matrix[row, column[substitute]] = value
    if not matrix.any():
        raise DomainError("all substitute vectors are zero")
    zero_rows = np.flatnonzero(~matrix.any(axis=1))
    if zero_rows.size:
        warnings.warn(
            f"{zero_rows.size} zero substitute vector(s); excluded from cosine-based clustering"
        )
    return matrix, dims


# ---------------------------------------------------------------------------
# File ingestion
# ---------------------------------------------------------------------------

def load_candidates(path: str | Path) -> dict[tuple[str, str], list[str]]:
    """Read `lemma<TAB>pos<TAB>candidate` into per-lemma candidate pools."""
    candidates: dict[tuple[str, str], list[str]] = {}
    with open(path, encoding="utf-8") as handle:
        for line_number, line in enumerate(handle, start=1):
            line = line.rstrip("\n")
            if not line.strip():
                continue
            parts = line.split("\t")
            if len(parts) != 3:
                raise CorpusFormatError(line_number, "expected lemma<TAB>pos<TAB>candidate")
            lemma, pos, candidate = parts
            pool = candidates.setdefault((lemma, pos), [])
            if candidate not in pool:
                pool.append(candidate)
    return candidates


def load_gold_substitutes(path: str | Path) -> dict[str, dict[str, dict[str, int]]]:
    """Read `lemma<TAB>instance_id<TAB>substitute<TAB>annotator_count`.

    Returns lemma -> instance_id -> substitute -> count.
    """
    gold: dict[str, dict[str, dict[str, int]]] = {}
    with open(path, encoding="utf-8") as handle:
        for line_number, line in enumerate(handle, start=1):
            line = line.rstrip("\n")
            if not line.strip():
                continue
            parts = line.split("\t")
            if len(parts) != 4:
                raise CorpusFormatError(
                    line_number, "expected lemma<TAB>instance<TAB>substitute<TAB>count"
                )
            lemma, instance, substitute, raw = parts
            try:
                count = int(raw)
            except ValueError as exc:
                raise CorpusFormatError(line_number, f"bad count {raw!r}") from exc
            if count <= 0:
                raise CorpusFormatError(line_number, "count must be positive")
            gold.setdefault(lemma, {}).setdefault(instance, {})[substitute] = count
    return gold


def load_substitute_scores(path: str | Path) -> dict[str, dict[str, list[tuple[str, float]]]]:
    """Read `lemma<TAB>instance_id<TAB>candidate<TAB>score` rankings.

    Returns lemma -> instance_id -> [(candidate, score), ...] in file order.
    """
    scores: dict[str, dict[str, list[tuple[str, float]]]] = {}
    with open(path, encoding="utf-8") as handle:
        for line_number, line in enumerate(handle, start=1):
            line = line.rstrip("\n")
            if not line.strip():
                continue
            parts = line.split("\t")
            if len(parts) != 4:
                raise CorpusFormatError(
                    line_number, "expected lemma<TAB>instance<TAB>candidate<TAB>score"
                )
            lemma, instance, candidate, raw = parts
            try:
                score = float(raw)
            except ValueError as exc:
                raise CorpusFormatError(line_number, f"bad score {raw!r}") from exc
            scores.setdefault(lemma, {}).setdefault(instance, []).append((candidate, score))
    return scores
