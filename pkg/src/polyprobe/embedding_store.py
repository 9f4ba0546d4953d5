"""Bit-exact archive of per-instance, per-layer contextualised vectors.

An archive directory holds ``manifest.json`` plus one raw float32
little-endian file per entry under ``data/``.  Each data file is laid out
layer-major, then instance-major, then dimension, so a per-layer analysis
streams one contiguous block.  Layers are indexed 1..L; an archive may
additionally carry the pre-contextual embedding layer as layer 0.  Storage
is float32 because model runtimes emit float32; downstream statistics are
computed in float64.
"""

from __future__ import annotations

import hashlib
import json
import re
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Iterator

import numpy as np

from .errors import (
    ArchiveCorruptError,
    ArchiveError,
    ArchiveLookupError,
    DomainError,
    LayerRangeError,
)
from .pool_builder import POOL_SIZE

MANIFEST_NAME = "manifest.json"
DATA_DIR = "data"

EntryKey = tuple[str, str, str]  # (lemma, pos, setting)


@dataclass(frozen=True)
class ArchiveEntry:
    lemma: str
    pos: str
    setting: str
    instance_ids: tuple[str, ...]
    data_file: str

    @property
    def key(self) -> EntryKey:
        return (self.lemma, self.pos, self.setting)


def _slug(text: str) -> str:
    return re.sub(r"[^A-Za-z0-9_-]+", "_", text)[:40] or "x"


def _n_blocks(n_layers: int, has_layer0: bool) -> int:
    return n_layers + (1 if has_layer0 else 0)


def _sha256(data: bytes) -> str:
    return hashlib.sha256(data).hexdigest()


def write_archive(
    root: str | Path,
    model_id: str,
    dim: int,
    n_layers: int,
    items: Iterable[tuple[str, str, str, tuple[str, ...], np.ndarray]],
    has_layer0: bool = False,
) -> Path:
    """Write an archive from (lemma, pos, setting, instance_ids, array) items.

    Each array must have shape (n_layers [+1 with layer 0], POOL_SIZE, dim);
    values are stored as little-endian float32.  Everything is validated
    before the first byte is written, so a refused write leaves no files.
    """
    if dim < 1 or n_layers < 1:
        raise DomainError("dim and n_layers must be positive")
    blocks = _n_blocks(n_layers, has_layer0)
    staged: list[tuple[ArchiveEntry, bytes]] = []
    seen: set[EntryKey] = set()
    for i, (lemma, pos, setting, instance_ids, array) in enumerate(items):
        key = (lemma, pos, setting)
        if key in seen:
            raise ArchiveError(f"duplicate entry {key}")
        seen.add(key)
        if len(instance_ids) != POOL_SIZE:
            raise ArchiveError(f"{key}: expected {POOL_SIZE} instance ids, got {len(instance_ids)}")
        array = np.asarray(array)
        expected = (blocks, POOL_SIZE, dim)
        if array.shape != expected:
            raise ArchiveError(f"{key}: array shape {array.shape} does not match {expected}")
        if not np.isfinite(array).all():
            raise ArchiveError(f"{key}: non-finite values")
        data_file = f"{DATA_DIR}/{i:05d}_{_slug(lemma)}_{pos}_{_slug(setting)}.f32"
        entry = ArchiveEntry(lemma, pos, setting, tuple(instance_ids), data_file)
        staged.append((entry, array.astype("<f4").tobytes(order="C")))

    root = Path(root)
    (root / DATA_DIR).mkdir(parents=True, exist_ok=True)
    checksums = {}
    for entry, payload in staged:
        (root / entry.data_file).write_bytes(payload)
        checksums[entry.data_file] = _sha256(payload)
    manifest = {
        "model_id": model_id,
        "dim": dim,
        "n_layers": n_layers,
        "has_layer0": has_layer0,
        "entries": [
            {
                "lemma": e.lemma,
                "pos": e.pos,
                "setting": e.setting,
                "instance_ids": list(e.instance_ids),
                "data_file": e.data_file,
            }
            for e, _ in staged
        ],
        "checksums": checksums,
    }
    (root / MANIFEST_NAME).write_text(
        json.dumps(manifest, indent=2, sort_keys=True) + "\n", encoding="utf-8"
    )
    return root


class EmbeddingArchive:
    """Read-only view of an archive directory; safe for concurrent readers."""

    def __init__(self, root: str | Path):
        self.root = Path(root)
        manifest_path = self.root / MANIFEST_NAME
        if not manifest_path.is_file():
            raise ArchiveError(f"no manifest at {manifest_path}")
        manifest = json.loads(manifest_path.read_text(encoding="utf-8"))
        self.model_id: str = manifest["model_id"]
        self.dim: int = manifest["dim"]
        self.n_layers: int = manifest["n_layers"]
        self.has_layer0: bool = manifest.get("has_layer0", False)
        self.checksums: dict[str, str] = manifest.get("checksums", {})
        self.entries: dict[EntryKey, ArchiveEntry] = {}
        for raw in manifest["entries"]:
            entry = ArchiveEntry(
                raw["lemma"],
                raw["pos"],
                raw["setting"],
                tuple(raw["instance_ids"]),
                raw["data_file"],
            )
            if len(entry.instance_ids) != POOL_SIZE:
                raise ArchiveError(f"{entry.key}: manifest lists {len(entry.instance_ids)} instances")
            self.entries[entry.key] = entry
        self._verified: set[str] = set()

    def __len__(self) -> int:
        return len(self.entries)

    def __contains__(self, key: EntryKey) -> bool:
        return key in self.entries

    def keys(self) -> Iterator[EntryKey]:
        return iter(self.entries)

    def layers(self, include_layer0: bool = False) -> list[int]:
        layers = list(range(1, self.n_layers + 1))
        if include_layer0 and self.has_layer0:
            layers = [0] + layers
        return layers

    def _entry(self, lemma: str, pos: str, setting: str) -> ArchiveEntry:
        key = (lemma, pos, setting)
        if key not in self.entries:
            raise ArchiveLookupError(f"no archive entry for {key}")
        return self.entries[key]

    def block_of(self, layer: int) -> int:
        low = 0 if self.has_layer0 else 1
        if not (low <= layer <= self.n_layers):
            raise LayerRangeError(
                f"layer {layer} outside archive range {low}..{self.n_layers}"
            )
        return layer if self.has_layer0 else layer - 1

    def _verify(self, data_file: str, payload: bytes) -> None:
        if data_file in self._verified:
            return
        recorded = self.checksums.get(data_file)
        if recorded is None:
            raise ArchiveCorruptError(f"no checksum recorded for {data_file}")
        if _sha256(payload) != recorded:
            raise ArchiveCorruptError(f"checksum mismatch for {data_file}")
        self._verified.add(data_file)

    def _payload(self, entry: ArchiveEntry) -> bytes:
        path = self.root / entry.data_file
        try:
            payload = path.read_bytes()
        except OSError as exc:
            raise ArchiveError(f"cannot read {path}: {exc}") from exc
        expected = _n_blocks(self.n_layers, self.has_layer0) * POOL_SIZE * self.dim * 4
        if len(payload) != expected:
            raise ArchiveCorruptError(
                f"{entry.data_file}: {len(payload)} bytes, expected {expected}"
            )
        self._verify(entry.data_file, payload)
        return payload

    def read_vectors(self, lemma: str, pos: str, setting: str, layer: int) -> np.ndarray:
        """The stored POOL_SIZE x dim float32 matrix for one layer."""
        entry = self._entry(lemma, pos, setting)
        block = self.block_of(layer)
        payload = self._payload(entry)
        block_bytes = POOL_SIZE * self.dim * 4
        chunk = payload[block * block_bytes : (block + 1) * block_bytes]
        return np.frombuffer(chunk, dtype="<f4").reshape(POOL_SIZE, self.dim).copy()

    def read_all_layers(self, lemma: str, pos: str, setting: str) -> np.ndarray:
        """All stored blocks for one entry, shape (blocks, POOL_SIZE, dim)."""
        entry = self._entry(lemma, pos, setting)
        payload = self._payload(entry)
        blocks = _n_blocks(self.n_layers, self.has_layer0)
        return (
            np.frombuffer(payload, dtype="<f4")
            .reshape(blocks, POOL_SIZE, self.dim)
            .copy()
        )

    def instance_ids(self, lemma: str, pos: str, setting: str) -> tuple[str, ...]:
        return self._entry(lemma, pos, setting).instance_ids

    def validate(self) -> list[str]:
        """Full scan: checksums, finiteness, all-zero rows.

        Returns a list of problems (empty means the archive satisfies the
        cosine preconditions of the similarity metrics).
        """
        problems = []
        for entry in self.entries.values():
            try:
                cube = self.read_all_layers(entry.lemma, entry.pos, entry.setting)
            except ArchiveError as exc:
                problems.append(str(exc))
                continue
            if not np.isfinite(cube).all():
                problems.append(f"{entry.key}: non-finite values")
            zero_rows = np.all(cube == 0.0, axis=2)
            if zero_rows.any():
                problems.append(f"{entry.key}: {int(zero_rows.sum())} all-zero rows")
        return problems


def open_archive(root: str | Path) -> EmbeddingArchive:
    return EmbeddingArchive(root)
