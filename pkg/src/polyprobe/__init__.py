"""Toolkit for probing contextualised word representations for lexical polysemy.

The pipeline: build sense-controlled sentence pools from an annotated corpus
(:mod:`polyprobe.pool_builder`), store per-instance per-layer vectors in a
bit-exact archive (:mod:`polyprobe.embedding_store`), compute layer-wise
self-similarity and anisotropy profiles with a significance protocol
(:mod:`polyprobe.simstats`), probe for polysemy level with deterministic
logistic-regression classifiers (:mod:`polyprobe.polyclass`), and estimate
word-sense clusterability against gold usage-similarity data
(:mod:`polyprobe.clusterlab`, :mod:`polyprobe.substvec`).
"""

__version__ = "0.1.0"

__all__ = [
    "pool_builder",
    "embedding_store",
    "simstats",
    "polyclass",
    "clusterlab",
    "substvec",
    "synth",
    "cli",
]
