"""Small shared helpers: labelled seed derivation and capped parallel map."""

from __future__ import annotations

import hashlib
import os
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Iterable, Sequence, TypeVar

T = TypeVar("T")
R = TypeVar("R")

THREADS_ENV = "POLYPROBE_THREADS"

_SEED_MASK = (1 << 63) - 1


def derive_seed(seed: int, purpose: str) -> int:
    """Derive a child seed from a run seed and a purpose label.

    Stable across processes (unlike ``hash``), so one ``--seed`` flag can fan
    out to independent generators without correlated streams.
    """
    digest = hashlib.sha256(purpose.encode("utf-8")).digest()
    return (seed ^ int.from_bytes(digest[:8], "little")) & _SEED_MASK


def max_threads() -> int:
    raw = os.environ.get(THREADS_ENV, "1")
    try:
        value = int(raw)
    except ValueError:
        return 1
    return max(1, value)


def thread_map(fn: Callable[[T], R], items: Sequence[T] | Iterable[T]) -> list[R]:
    """Order-preserving map, parallel when POLYPROBE_THREADS > 1."""
    items = list(items)
    workers = max_threads()
    if workers <= 1 or len(items) <= 1:
        return [fn(item) for item in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))
