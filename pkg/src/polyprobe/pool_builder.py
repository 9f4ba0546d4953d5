"""Construction of sense-controlled sentence pools and balanced datasets.

A sense-annotated corpus is indexed into per-(lemma, pos) entries.  Entries
with at least ten instances can supply fixed-size pools of ten instances,
sampled under one of four settings:

- ``mono``: uniform sample over a one-sense word's instances,
- ``poly-bal``: round-robin over senses, one unused instance per sense per
  pass, so sense counts differ by at most one until senses run dry,
- ``poly-rand``: uniform sample over all instances of a polysemous word,
- ``poly-same``: ten instances of the sense with the most instances.

A dataset pairs ``n`` one-sense words with ``n`` polysemous words (the latter
carrying all three poly pools over the same lemmas) and can be balanced
across polysemy bands by grammatical category or corpus frequency range.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Iterator, Mapping, Sequence

import numpy as np

from .errors import (
    BalanceInfeasibleError,
    CapacityError,
    CorpusFormatError,
    DomainError,
    PoolInfeasibleError,
)

POS_TAGS = ("n", "v", "a", "r")
BANDS = ("mono", "low", "mid", "high")
SETTINGS = ("mono", "poly-bal", "poly-rand", "poly-same")
POLY_SETTINGS = ("poly-bal", "poly-rand", "poly-same")

POOL_SIZE = 10
MIN_INSTANCES = 10
MAX_SENTENCE_LEN = 100

LemmaKey = tuple[str, str]


# ---------------------------------------------------------------------------
# Domain types
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Annotation:
    index: int
    lemma: str
    pos: str
    sense: str


@dataclass(frozen=True)
class AnnotatedSentence:
    sentence_id: str
    tokens: tuple[str, ...]
    annotations: tuple[Annotation, ...]


@dataclass(frozen=True)
class Instance:
    """One occurrence of a lemma: sentence, position, annotated sense."""

    sentence_id: str
    token_index: int
    sense_id: str


@dataclass
class LemmaEntry:
    lemma: str
    pos: str
    n_senses: int
    band: str
    instances: list[Instance]
    admissible: bool
    frequency: int | None = None

    @property
    def key(self) -> LemmaKey:
        return (self.lemma, self.pos)

    def sense_counts(self) -> dict[str, int]:
        counts: dict[str, int] = {}
        for inst in self.instances:
            counts[inst.sense_id] = counts.get(inst.sense_id, 0) + 1
        return counts


@dataclass(frozen=True)
class SentencePool:
    """Exactly ten instances of one lemma under one sampling setting."""

    lemma: str
    pos: str
    setting: str
    members: tuple[Instance, ...]

    def __post_init__(self):
        if self.setting not in SETTINGS:
            raise DomainError(f"unknown pool setting {self.setting!r}")
        if len(self.members) != POOL_SIZE:
            raise DomainError(
                f"pool for {self.lemma}|{self.pos} has {len(self.members)} members, "
                f"expected {POOL_SIZE}"
            )
        positions = {(m.sentence_id, m.token_index) for m in self.members}
        if len(positions) != POOL_SIZE:
            raise DomainError(f"duplicate instances in pool for {self.lemma}|{self.pos}")
        if self.setting in ("mono", "poly-same"):
            senses = {m.sense_id for m in self.members}
            if len(senses) != 1:
                raise DomainError(
                    f"{self.setting} pool for {self.lemma}|{self.pos} mixes senses {sorted(senses)}"
                )

    @property
    def key(self) -> LemmaKey:
        return (self.lemma, self.pos)

    def instance_ids(self) -> tuple[str, ...]:
        return tuple(instance_id(m) for m in self.members)


def instance_id(instance: Instance) -> str:
    return f"{instance.sentence_id}:{instance.token_index}"


@dataclass
class IngestStats:
    sentences_kept: int = 0
    sentences_skipped_too_long: int = 0
    sentences_skipped_duplicate: int = 0
    annotations_kept: int = 0
    annotations_rejected: int = 0
    lemmas_missing_from_inventory: int = 0


@dataclass
class CorpusIndex:
    """Map (lemma, pos) -> LemmaEntry, plus the sentences they reference."""

    entries: dict[LemmaKey, LemmaEntry]
    sentences: dict[str, tuple[str, ...]]
    stats: IngestStats

    def __getitem__(self, key: LemmaKey) -> LemmaEntry:
        return self.entries[key]

    def __iter__(self) -> Iterator[LemmaKey]:
        return iter(self.entries)

    def __len__(self) -> int:
        return len(self.entries)

    def admissible(self) -> list[LemmaEntry]:
        return [e for e in self.entries.values() if e.admissible]


@dataclass
class DatasetLemma:
    lemma: str
    pos: str
    n_senses: int
    band: str
    pools: dict[str, SentencePool]
    frequency: int | None = None

    @property
    def key(self) -> LemmaKey:
        return (self.lemma, self.pos)


@dataclass
class PoolDataset:
    lemmas: list[DatasetLemma]
    sentences: dict[str, tuple[str, ...]] = field(default_factory=dict)
    seed: int | None = None
    config: dict = field(default_factory=dict)

    def by_band(self) -> dict[str, list[DatasetLemma]]:
        groups: dict[str, list[DatasetLemma]] = {}
        for lem in self.lemmas:
            groups.setdefault(lem.band, []).append(lem)
        return groups

    def lemma(self, key: LemmaKey) -> DatasetLemma:
        for lem in self.lemmas:
            if lem.key == key:
                return lem
        raise KeyError(key)


@dataclass(frozen=True)
class FrequencyRanges:
    """Three ascending boundaries splitting counts into four quartile ranges."""

    boundaries: tuple[float, float, float]
    degenerate: bool

    def range_of(self, frequency: float) -> int:
        for i, bound in enumerate(self.boundaries):
            if frequency <= bound:
                return i
        return 3


@dataclass(frozen=True)
class BalanceSpec:
    criterion: str
    per_group_quota: dict


# ---------------------------------------------------------------------------
# Corpus and table ingestion
# ---------------------------------------------------------------------------

def _parse_sentence(obj: dict, line_number: int) -> AnnotatedSentence:
    try:
        sentence_id = obj["sentence_id"]
        tokens = obj["tokens"]
        raw_annotations = obj["annotations"]
    except (KeyError, TypeError) as exc:
        raise CorpusFormatError(line_number, f"missing field: {exc}") from exc
    if not isinstance(sentence_id, str) or not sentence_id:
        raise CorpusFormatError(line_number, "sentence_id must be a non-empty string")
    if not isinstance(tokens, list) or not all(isinstance(t, str) for t in tokens):
        raise CorpusFormatError(line_number, "tokens must be a list of strings")
    annotations = []
    for ann in raw_annotations:
        try:
            index = ann["index"]
            lemma = ann["lemma"]
            pos = ann["pos"]
            sense = ann["sense"]
        except (KeyError, TypeError) as exc:
            raise CorpusFormatError(line_number, f"bad annotation: {exc}") from exc
        if not isinstance(index, int) or isinstance(index, bool):
            raise CorpusFormatError(line_number, "annotation index must be an integer")
        if pos not in POS_TAGS:
            raise CorpusFormatError(line_number, f"unknown pos {pos!r}")
        if not isinstance(lemma, str) or not lemma:
            raise CorpusFormatError(line_number, "lemma must be a non-empty string")
        if not isinstance(sense, str):
            raise CorpusFormatError(line_number, "sense must be a string")
        annotations.append(Annotation(index=index, lemma=lemma, pos=pos, sense=sense))
    return AnnotatedSentence(sentence_id, tuple(tokens), tuple(annotations))


def read_corpus_jsonl(lines: Iterable[str]) -> Iterator[AnnotatedSentence]:
    """Parse the one-JSON-object-per-line corpus format.

    Raises CorpusFormatError with the offending 1-based line number.
    """
    for line_number, line in enumerate(lines, start=1):
        if not line.strip():
            continue
        try:
            obj = json.loads(line)
        except json.JSONDecodeError as exc:
            raise CorpusFormatError(line_number, f"invalid JSON ({exc.msg})") from exc
        yield _parse_sentence(obj, line_number)


def load_corpus(path: str | Path) -> list[AnnotatedSentence]:
    with open(path, encoding="utf-8") as handle:
        return list(read_corpus_jsonl(handle))


def load_inventory(path: str | Path) -> dict[LemmaKey, int]:
    """Read the `lemma<TAB>pos<TAB>n_senses` sense-inventory table."""
    inventory: dict[LemmaKey, int] = {}
    with open(path, encoding="utf-8") as handle:
        for line_number, line in enumerate(handle, start=1):
            line = line.rstrip("\n")
            if not line.strip():
                continue
            parts = line.split("\t")
            if len(parts) != 3:
                raise CorpusFormatError(line_number, "expected lemma<TAB>pos<TAB>n_senses")
            lemma, pos, raw = parts
            if pos not in POS_TAGS:
                raise CorpusFormatError(line_number, f"unknown pos {pos!r}")
            try:
                n_senses = int(raw)
            except ValueError as exc:
                raise CorpusFormatError(line_number, f"bad sense count {raw!r}") from exc
            if n_senses < 1:
                raise CorpusFormatError(line_number, f"sense count must be >= 1, got {n_senses}")
            inventory[(lemma, pos)] = n_senses
    return inventory


class FrequencyTable:
    """Corpus frequencies keyed by (lemma, pos), with pos-wildcard fallback."""

    def __init__(self):
        self._exact: dict[LemmaKey, int] = {}
        self._wildcard: dict[str, int] = {}

    def set(self, lemma: str, pos: str | None, count: int):
        if pos is None:
            self._wildcard[lemma] = count
        else:
            self._exact[(lemma, pos)] = count

    def get(self, lemma: str, pos: str, default: int | None = None) -> int | None:
        if (lemma, pos) in self._exact:
            return self._exact[(lemma, pos)]
        return self._wildcard.get(lemma, default)

    def __len__(self) -> int:
        return len(self._exact) + len(self._wildcard)


def load_frequency_table(path: str | Path) -> FrequencyTable:
    """Read `lemma<TAB>pos<TAB>count`; a two-column row is a pos wildcard."""
    table = FrequencyTable()
    with open(path, encoding="utf-8") as handle:
        for line_number, line in enumerate(handle, start=1):
            line = line.rstrip("\n")
            if not line.strip():
                continue
            parts = line.split("\t")
            if len(parts) == 3:
                lemma, pos, raw = parts
                if pos not in POS_TAGS:
                    raise CorpusFormatError(line_number, f"unknown pos {pos!r}")
            elif len(parts) == 2:
                lemma, raw = parts
                pos = None
            else:
                raise CorpusFormatError(line_number, "expected lemma[<TAB>pos]<TAB>count")
            try:
                count = int(raw)
            except ValueError as exc:
                raise CorpusFormatError(line_number, f"bad count {raw!r}") from exc
            if count < 0:
                raise CorpusFormatError(line_number, "count must be non-negative")
            table.set(lemma, pos, count)
    return table


# ---------------------------------------------------------------------------
# Indexing and bands
# ---------------------------------------------------------------------------

def assign_band(n_senses: int) -> str:
    """Polysemy band for a sense count: 1, 2-3, 4-6, >6."""
    if n_senses < 1:
        raise DomainError(f"n_senses must be >= 1, got {n_senses}")
    if n_senses == 1:
        return "mono"
    if n_senses <= 3:
        return "low"
    if n_senses <= 6:
        return "mid"
    return "high"


def index_corpus(
    corpus_stream: Iterable[AnnotatedSentence],
    inventory: Mapping[LemmaKey, int] | None = None,
) -> CorpusIndex:
    """Group annotations into per-(lemma, pos) entries.

    Sense counts come from the supplied inventory table (lemmas absent from
    it are kept but marked inadmissible); with ``inventory=None`` the counts
    fall back to the senses attested in the corpus.  Sentences longer than
    MAX_SENTENCE_LEN tokens are dropped.  Annotations with an out-of-range
    token index, an empty sense id, or a duplicate (sentence, index) position
    for the same lemma are rejected and counted.
    """
    stats = IngestStats()
    sentences: dict[str, tuple[str, ...]] = {}
    raw_instances: dict[LemmaKey, list[Instance]] = {}
    seen_positions: set[tuple[str, str, str, int]] = set()

    for sent in corpus_stream:
        if sent.sentence_id in sentences:
            stats.sentences_skipped_duplicate += 1
            continue
        if len(sent.tokens) > MAX_SENTENCE_LEN:
            stats.sentences_skipped_too_long += 1
            continue
        sentences[sent.sentence_id] = sent.tokens
        stats.sentences_kept += 1
        for ann in sent.annotations:
            if not (0 <= ann.index < len(sent.tokens)) or not ann.sense:
                stats.annotations_rejected += 1
                continue
            position = (ann.lemma, ann.pos, sent.sentence_id, ann.index)
            if position in seen_positions:
                stats.annotations_rejected += 1
                continue
            seen_positions.add(position)
            stats.annotations_kept += 1
            raw_instances.setdefault((ann.lemma, ann.pos), []).append(
                Instance(sent.sentence_id, ann.index, ann.sense)
            )

    entries: dict[LemmaKey, LemmaEntry] = {}
    for key in sorted(raw_instances):
        lemma, pos = key
        instances = raw_instances[key]
        attested = len({inst.sense_id for inst in instances})
        if inventory is None:
            n_senses = attested
            known = True
        else:
            known = key in inventory
            n_senses = inventory[key] if known else attested
            if not known:
                stats.lemmas_missing_from_inventory += 1
        entries[key] = LemmaEntry(
            lemma=lemma,
            pos=pos,
            n_senses=n_senses,
            band=assign_band(n_senses),
            instances=instances,
            admissible=known and len(instances) >= MIN_INSTANCES,
        )
    return CorpusIndex(entries=entries, sentences=sentences, stats=stats)


# ---------------------------------------------------------------------------
# Pool construction
# ---------------------------------------------------------------------------

def _ordered_senses(counts: Mapping[str, int]) -> list[str]:
    # Descending instance count, sense id as the deterministic tie-break.
    return sorted(counts, key=lambda s: (-counts[s], s))


def _sample(instances: Sequence[Instance], size: int, rng: np.random.Generator) -> list[Instance]:
    idx = rng.choice(len(instances), size=size, replace=False)
    return [instances[int(i)] for i in idx]


def build_pool(entry: LemmaEntry, setting: str, rng: np.random.Generator) -> SentencePool:
    """Sample a ten-instance pool for one lemma under one setting.

    Same seed, same pool: every random draw flows through ``rng``.
    """
    if setting not in SETTINGS:
        raise DomainError(f"unknown pool setting {setting!r}")
    total = len(entry.instances)
    if total < POOL_SIZE:
        raise PoolInfeasibleError(
            f"{entry.lemma}|{entry.pos} has {total} instances, needs {POOL_SIZE}"
        )
    if setting == "mono":
        if entry.n_senses != 1:
            raise DomainError(f"mono pool requested for {entry.n_senses}-sense word {entry.lemma}")
        members = _sample(entry.instances, POOL_SIZE, rng)
    elif setting == "poly-rand":
        if entry.n_senses < 2:
            raise DomainError(f"poly pool requested for one-sense word {entry.lemma}")
        members = _sample(entry.instances, POOL_SIZE, rng)
    elif setting == "poly-same":
        if entry.n_senses < 2:
            raise DomainError(f"poly pool requested for one-sense word {entry.lemma}")
        counts = entry.sense_counts()
        top = _ordered_senses(counts)[0]
        if counts[top] < POOL_SIZE:
            raise PoolInfeasibleError(
                f"{entry.lemma}|{entry.pos}: largest sense {top!r} has only "
                f"{counts[top]} instances"
            )
        pool_of_sense = [inst for inst in entry.instances if inst.sense_id == top]
        members = _sample(pool_of_sense, POOL_SIZE, rng)
    else:  # poly-bal
        if entry.n_senses < 2:
            raise DomainError(f"poly pool requested for one-sense word {entry.lemma}")
        counts = entry.sense_counts()
        order = _ordered_senses(counts)
        unused = {
            sense: [inst for inst in entry.instances if inst.sense_id == sense]
            for sense in order
        }
        members = []
        while len(members) < POOL_SIZE:
            for sense in order:
                pool_of_sense = unused[sense]
                if not pool_of_sense:
                    continue
                pick = int(rng.integers(len(pool_of_sense)))
                members.append(pool_of_sense.pop(pick))
                if len(members) == POOL_SIZE:
                    break
    return SentencePool(entry.lemma, entry.pos, setting, tuple(members))


def mono_eligible(entry: LemmaEntry) -> bool:
    return (
        entry.admissible
        and entry.n_senses == 1
        and len({i.sense_id for i in entry.instances}) == 1
    )


def poly_eligible(entry: LemmaEntry) -> bool:
    # All three poly pools must be buildable for the same lemma, so the
    # majority sense needs ten instances of its own (poly-same feasibility).
    if not entry.admissible or entry.n_senses < 2:
        return False
    counts = entry.sense_counts()
    return max(counts.values()) >= POOL_SIZE


def make_dataset(
    index: CorpusIndex,
    n_per_class: int,
    rng: np.random.Generator,
    seed: int | None = None,
) -> PoolDataset:
    """Sample a class-balanced dataset: n mono lemmas and n poly lemmas.

    Each mono lemma gets one mono pool; each poly lemma gets poly-bal,
    poly-rand and poly-same pools over the same instances.
    """
    if n_per_class < 0:
        raise DomainError("n_per_class must be non-negative")
    mono_keys = sorted(e.key for e in index.entries.values() if mono_eligible(e))
    poly_keys = sorted(e.key for e in index.entries.values() if poly_eligible(e))
    if len(mono_keys) < n_per_class or len(poly_keys) < n_per_class:
        raise CapacityError(
            f"requested {n_per_class} lemmas per class, have "
            f"{len(mono_keys)} mono and {len(poly_keys)} poly eligible"
        )

    def pick(keys: list[LemmaKey]) -> list[LemmaKey]:
        chosen = rng.choice(len(keys), size=n_per_class, replace=False)
        return sorted(keys[int(i)] for i in chosen)

    lemmas: list[DatasetLemma] = []
    for key in pick(mono_keys):
        entry = index[key]
        pool = build_pool(entry, "mono", rng)
        lemmas.append(
            DatasetLemma(entry.lemma, entry.pos, entry.n_senses, entry.band, {"mono": pool})
        )
    for key in pick(poly_keys):
        entry = index[key]
        pools = {setting: build_pool(entry, setting, rng) for setting in POLY_SETTINGS}
        lemmas.append(
            DatasetLemma(entry.lemma, entry.pos, entry.n_senses, entry.band, pools)
        )

    dataset = PoolDataset(
        lemmas=lemmas,
        seed=seed,
        config={"n_per_class": n_per_class},
    )
    dataset.sentences = _referenced_sentences(dataset, index.sentences)
    return dataset


def _referenced_sentences(
    dataset: PoolDataset, sentences: Mapping[str, tuple[str, ...]]
) -> dict[str, tuple[str, ...]]:
    referenced: dict[str, tuple[str, ...]] = {}
    for lem in dataset.lemmas:
        for pool in lem.pools.values():
            for member in pool.members:
                sid = member.sentence_id
                if sid in sentences:
                    referenced[sid] = sentences[sid]
    return referenced


# ---------------------------------------------------------------------------
# Frequencies and balancing
# ---------------------------------------------------------------------------

def attach_frequencies(dataset: PoolDataset, table: FrequencyTable, missing: int = 1) -> None:
    """Set each lemma's frequency from the table; absent lemmas get ``missing``."""
    for lem in dataset.lemmas:
        lem.frequency = table.get(lem.lemma, lem.pos, default=missing)


def _nearest_rank(sorted_values: Sequence[float], quantile: float) -> float:
    n = len(sorted_values)
    rank = max(1, math.ceil(quantile * n))
    return sorted_values[rank - 1]


def compute_freq_ranges(frequencies: Sequence[float]) -> FrequencyRanges:
    """Quartile boundaries (nearest-rank 25th/50th/75th percentiles)."""
    if len(frequencies) == 0:
        raise DomainError("frequency list is empty")
    ordered = sorted(frequencies)
    boundaries = tuple(_nearest_rank(ordered, q) for q in (0.25, 0.50, 0.75))
    degenerate = not (boundaries[0] < boundaries[1] < boundaries[2])
    return FrequencyRanges(boundaries=boundaries, degenerate=degenerate)


def balance_bands(
    dataset: PoolDataset,
    criterion: str,
    rng: np.random.Generator,
    ranges: FrequencyRanges | None = None,
) -> PoolDataset:
    """Subsample every band to the same per-group composition.

    The group is the grammatical category (``criterion="pos"``) or the
    frequency range (``criterion="freq"``); each group's quota is the
    smallest count of that group over all bands, and groups whose minimum
    is zero are dropped from every band.
    """
    if criterion not in ("pos", "freq"):
        raise DomainError(f"unknown balance criterion {criterion!r}")
    if criterion == "freq":
        missing = [lem.key for lem in dataset.lemmas if lem.frequency is None]
        if missing:
            raise DomainError(f"frequencies missing for {len(missing)} lemmas, e.g. {missing[0]}")
        if ranges is None:
            ranges = compute_freq_ranges([lem.frequency for lem in dataset.lemmas])

        def group_of(lem: DatasetLemma):
            return ranges.range_of(lem.frequency)
    else:

        def group_of(lem: DatasetLemma):
            return lem.pos

    by_band = dataset.by_band()
    bands = [b for b in BANDS if b in by_band]
    groups = sorted({group_of(lem) for lem in dataset.lemmas}, key=str)

    quota = {
        group: min(sum(1 for lem in by_band[band] if group_of(lem) == group) for band in bands)
        for group in groups
    }
    kept_groups = [g for g in groups if quota[g] > 0]
    if not kept_groups:
        raise BalanceInfeasibleError(
            f"no {criterion} group occurs in every band; quotas {quota}"
        )

    kept: list[DatasetLemma] = []
    for band in bands:
        for group in kept_groups:
            candidates = sorted(
                (lem for lem in by_band[band] if group_of(lem) == group),
                key=lambda lem: lem.key,
            )
            chosen = rng.choice(len(candidates), size=quota[group], replace=False)
            kept.extend(candidates[int(i)] for i in chosen)

    kept.sort(key=lambda lem: lem.key)
    spec = BalanceSpec(criterion=criterion, per_group_quota={g: quota[g] for g in kept_groups})
    config = dict(dataset.config)
    config["balance"] = {"criterion": spec.criterion, "per_group_quota": spec.per_group_quota}
    if criterion == "freq":
        config["freq_boundaries"] = list(ranges.boundaries)
    balanced = PoolDataset(lemmas=kept, seed=dataset.seed, config=config)
    balanced.sentences = _referenced_sentences(balanced, dataset.sentences)
    return balanced


# ---------------------------------------------------------------------------
# Dataset (de)serialization
# ---------------------------------------------------------------------------

def dataset_to_json(dataset: PoolDataset) -> dict:
    return {
        "seed": dataset.seed,
        "config": dataset.config,
        "lemmas": [
            {
                "lemma": lem.lemma,
                "pos": lem.pos,
                "n_senses": lem.n_senses,
                "band": lem.band,
                "frequency": lem.frequency,
                "pools": {
                    setting: [
                        {
                            "sentence_id": m.sentence_id,
                            "token_index": m.token_index,
                            "sense_id": m.sense_id,
                        }
                        for m in pool.members
                    ]
                    for setting, pool in sorted(lem.pools.items())
                },
            }
            for lem in dataset.lemmas
        ],
        "sentences": {sid: list(tokens) for sid, tokens in sorted(dataset.sentences.items())},
    }


def dataset_from_json(obj: dict) -> PoolDataset:
    lemmas = []
    for raw in obj["lemmas"]:
        pools = {
            setting: SentencePool(
                raw["lemma"],
                raw["pos"],
                setting,
                tuple(
                    Instance(m["sentence_id"], m["token_index"], m["sense_id"])
                    for m in members
                ),
            )
            for setting, members in raw["pools"].items()
        }
        lemmas.append(
            DatasetLemma(
                lemma=raw["lemma"],
                pos=raw["pos"],
                n_senses=raw["n_senses"],
                band=raw["band"],
                pools=pools,
                frequency=raw.get("frequency"),
            )
        )
    return PoolDataset(
        lemmas=lemmas,
        sentences={sid: tuple(tokens) for sid, tokens in obj.get("sentences", {}).items()},
        seed=obj.get("seed"),
        config=obj.get("config", {}),
    )


def save_dataset(dataset: PoolDataset, path: str | Path) -> None:
    payload = json.dumps(dataset_to_json(dataset), indent=2, sort_keys=True, ensure_ascii=False)
    Path(path).write_text(payload + "\n", encoding="utf-8")


def load_dataset(path: str | Path) -> PoolDataset:
    with open(path, encoding="utf-8") as handle:
        return dataset_from_json(json.load(handle))
