"""Synthetic corpora and embedding archives for demos and verification.

Real corpora and pretrained models are licensed externally, so end-to-end
behaviour is exercised on generated stand-ins: a sense-annotated corpus
whose pools are feasible by construction, and archives whose instance
vectors are a per-lemma, per-layer base direction plus isotropic noise
whose scale is controlled per pool setting or per polysemy band.  Larger
noise means lower self-similarity, which gives the generators known
orderings to verify against.
"""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from .embedding_store import write_archive
from .pool_builder import (
    AnnotatedSentence,
    Annotation,
    PoolDataset,
    POOL_SIZE,
)

DEFAULT_SETTING_NOISE = {
    "mono": 0.05,
    "poly-same": 0.15,
    "poly-rand": 0.3,
    "poly-bal": 0.5,
}

DEFAULT_BAND_NOISE = {"mono": 0.05, "low": 0.2, "mid": 0.35, "high": 0.5}

_BAND_SENSES = {"mono": 1, "low": 2, "mid": 5, "high": 8}


def synth_corpus(
    n_mono: int = 8,
    n_poly: int = 8,
    instances_per_lemma: int = 24,
    rng: np.random.Generator | None = None,
) -> tuple[list[AnnotatedSentence], dict[tuple[str, str], int]]:
    """A small annotated corpus plus its sense inventory.

    Poly lemmas rotate through the low/mid/high bands and get enough
    instances of their first sense to keep every pool setting feasible.
    """
    rng = rng or np.random.default_rng(0)
    sentences: list[AnnotatedSentence] = []
    inventory: dict[tuple[str, str], int] = {}
    filler = ["the", "quick", "brown", "fox", "jumps", "over", "a", "lazy", "dog"]
    poly_bands = ["low", "mid", "high"]
    sid = 0

    def add_sentence(lemma: str, pos: str, sense: str):
        nonlocal sid
        sid += 1
        length = int(rng.integers(5, 12))
        tokens = [filler[int(rng.integers(len(filler)))] for _ in range(length)]
        index = int(rng.integers(length))
        tokens[index] = lemma
        sentences.append(
            AnnotatedSentence(
                sentence_id=f"s{sid:05d}",
                tokens=tuple(tokens),
                annotations=(Annotation(index=index, lemma=lemma, pos=pos, sense=sense),),
            )
        )

    for i in range(n_mono):
        lemma, pos = f"mono{i:03d}", "n"
        inventory[(lemma, pos)] = 1
        for _ in range(instances_per_lemma):
            add_sentence(lemma, pos, f"{lemma}%1")
    for i in range(n_poly):
        band = poly_bands[i % len(poly_bands)]
        n_senses = _BAND_SENSES[band]
        lemma, pos = f"poly{i:03d}", "n"
        inventory[(lemma, pos)] = n_senses
        # Majority sense gets ten instances so poly-same is feasible.
        senses = [f"{lemma}%{j + 1}" for j in range(n_senses)]
        for _ in range(POOL_SIZE + 2):
            add_sentence(lemma, pos, senses[0])
        remaining = max(instances_per_lemma - (POOL_SIZE + 2), n_senses - 1)
        for j in range(remaining):
            add_sentence(lemma, pos, senses[1 + j % max(1, n_senses - 1)])
    return sentences, inventory


def corpus_to_jsonl(sentences: list[AnnotatedSentence]) -> str:
    lines = []
    for sent in sentences:
        lines.append(
            json.dumps(
                {
                    "sentence_id": sent.sentence_id,
                    "tokens": list(sent.tokens),
                    "annotations": [
                        {"index": a.index, "lemma": a.lemma, "pos": a.pos, "sense": a.sense}
                        for a in sent.annotations
                    ],
                },
                ensure_ascii=False,
            )
        )
    return "\n".join(lines) + "\n"


def inventory_to_tsv(inventory: dict[tuple[str, str], int]) -> str:
    return "".join(
        f"{lemma}\t{pos}\t{n}\n" for (lemma, pos), n in sorted(inventory.items())
    )


def synth_frequencies(
    inventory: dict[tuple[str, str], int], rng: np.random.Generator
) -> dict[tuple[str, str], int]:
    # Frequencies loosely increase with sense count, echoing the Zipfian link.
    return {
        key: int(rng.integers(100, 1000) * (1 + n))
        for key, n in sorted(inventory.items())
    }


def frequencies_to_tsv(freqs: dict[tuple[str, str], int]) -> str:
    return "".join(f"{lemma}\t{pos}\t{c}\n" for (lemma, pos), c in sorted(freqs.items()))


def synth_archive(
    dataset: PoolDataset,
    out: str | Path,
    rng: np.random.Generator,
    dim: int = 16,
    n_layers: int = 4,
    setting_noise: dict[str, float] | None = None,
    band_noise: dict[str, float] | None = None,
    model_id: str = "synthetic",
) -> Path:
    """Write an archive whose self-similarity structure is known.

    Noise scale per pool is ``setting_noise[setting]`` by default; when
    ``band_noise`` is given it overrides with the lemma's band (and the
    setting is ignored), which makes band profiles ordered by construction.
    """
    if setting_noise is None and band_noise is None:
        setting_noise = DEFAULT_SETTING_NOISE

    items = []
    for lem in dataset.lemmas:
        base = rng.standard_normal((n_layers, dim))
        base /= np.linalg.norm(base, axis=1, keepdims=True)
        for setting, pool in sorted(lem.pools.items()):
            if band_noise is not None:
                sigma = band_noise[lem.band]
            else:
                sigma = setting_noise[setting]
            noise = rng.standard_normal((n_layers, POOL_SIZE, dim)) * sigma
            cube = base[:, None, :] + noise
            items.append((lem.lemma, lem.pos, setting, pool.instance_ids(), cube))
    return write_archive(
        out, model_id=model_id, dim=dim, n_layers=n_layers, items=items
    )


def overlap_sweep_points(
    epsilon: float,
    rng: np.random.Generator,
    n_points: int = POOL_SIZE,
    dim: int = 2,
    sigma: float = 0.02,
    max_separation: float = 4.0,
    min_separation: float = 0.3,
) -> np.ndarray:
    """Two equal blobs whose separation shrinks linearly as overlap grows.

    The noise realization depends only on the generator, not on epsilon, so
    along a sweep with a reused seed the cluster geometry changes only
    through the separation: silhouette and variance ratio fall strictly with
    epsilon while separability rises strictly.
    """
    if not (0.0 <= epsilon <= 1.0):
        raise ValueError(f"epsilon must be in [0, 1], got {epsilon}")
    half = n_points // 2
    noise = rng.standard_normal((n_points, dim)) * sigma
    separation = max_separation - (max_separation - min_separation) * epsilon
    centers = np.zeros((n_points, dim))
    centers[:half, 0] = -separation / 2
    centers[half:, 0] = +separation / 2
    return centers + noise
