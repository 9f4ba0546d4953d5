"""Command-line orchestration: build pools, analyze archives, emit reports.

Subcommands mirror the analysis stages: ``pools build``, ``analyze selfsim``,
``analyze anisotropy``, ``analyze significance``, ``classify``,
``clusterability`` and ``report figures``.  Every run records its resolved
configuration next to its outputs, seeds all randomness from one ``--seed``
flag via labelled derivation, and writes output files atomically (everything
is computed first; nothing is left behind on failure).

Exit codes: 0 success, 1 data error, 2 usage error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
import tempfile
from pathlib import Path

import numpy as np

from . import __version__, clusterlab, polyclass, simstats, substvec
from .embedding_store import EmbeddingArchive
from .errors import PolyprobeError
from .pool_builder import (
    attach_frequencies,
    balance_bands,
    compute_freq_ranges,
    index_corpus,
    load_corpus,
    load_dataset,
    load_frequency_table,
    load_inventory,
    make_dataset,
    save_dataset,
)
from .svg import line_chart
from .util import derive_seed

ADJACENT = {
    "setting": [("mono", "poly-same"), ("mono", "poly-rand"), ("mono", "poly-bal")],
    "band": [("mono", "low"), ("low", "mid"), ("mid", "high")],
}


# ---------------------------------------------------------------------------
# Output helpers
# ---------------------------------------------------------------------------

def _csv_bytes(rows: list[dict], columns: list[str]) -> bytes:
    buffer = io.StringIO()
    writer = csv.DictWriter(buffer, fieldnames=columns, lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow({c: _csv_cell(row.get(c)) for c in columns})
    return buffer.getvalue().encode("utf-8")


def _csv_cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return format(value, ".10g")
    return str(value)


def write_outputs(out_dir: Path, files: dict[str, bytes | str]) -> None:
    """Write all files to a scratch dir first, then move them into place."""
    out_dir.mkdir(parents=True, exist_ok=True)
    with tempfile.TemporaryDirectory(dir=out_dir) as scratch:
        staged = []
        for name, payload in files.items():
            if isinstance(payload, str):
                payload = payload.encode("utf-8")
            tmp_path = Path(scratch) / name
            tmp_path.write_bytes(payload)
            staged.append((tmp_path, out_dir / name))
        for tmp_path, final_path in staged:
            os.replace(tmp_path, final_path)


def _run_config(args: argparse.Namespace) -> bytes:
    config = {k: v for k, v in sorted(vars(args).items()) if k != "func"}
    config["version"] = __version__
    return (json.dumps(config, indent=2, sort_keys=True, default=str) + "\n").encode()


def _layers_arg(archive: EmbeddingArchive, spec: str | None) -> list[int]:
    if spec is None or spec == "all":
        return archive.layers()
    if "-" in spec:
        lo, hi = spec.split("-", 1)
        layers = list(range(int(lo), int(hi) + 1))
    else:
        layers = [int(x) for x in spec.split(",")]
    for layer in layers:
        archive.block_of(layer)  # validates range
    return layers


def _load_pools(args) -> object:
    dataset = load_dataset(args.pools)
    if getattr(args, "frequencies", None):
        attach_frequencies(dataset, load_frequency_table(args.frequencies))
    return dataset


def _profile_rows(profiles) -> list[dict]:
    rows = []
    for profile in profiles:
        for layer in sorted(profile.scores):
            rows.append(
                {
                    "group": profile.group,
                    "layer": layer,
                    "mean": profile.scores[layer],
                    "n": profile.n,
                }
            )
    return rows


def _profile_chart(profiles, title: str, timestamp: bool) -> str:
    series = {
        p.group: (sorted(p.scores), [p.scores[l] for l in sorted(p.scores)])
        for p in profiles
    }
    return line_chart(series, title=title, ylabel="mean self-similarity", timestamp=timestamp)


# ---------------------------------------------------------------------------
# Subcommand implementations
# ---------------------------------------------------------------------------

def cmd_pools_build(args) -> int:
    corpus = load_corpus(args.corpus)
    inventory = load_inventory(args.inventory) if args.inventory else None
    index = index_corpus(corpus, inventory)
    rng = np.random.default_rng(derive_seed(args.seed, "pools-build"))
    dataset = make_dataset(index, args.n_per_class, rng, seed=args.seed)
    if args.frequencies:
        attach_frequencies(dataset, load_frequency_table(args.frequencies))
    if args.balance != "none":
        balance_rng = np.random.default_rng(derive_seed(args.seed, f"balance-{args.balance}"))
        dataset = balance_bands(dataset, args.balance, balance_rng)
    save_dataset(dataset, args.out)
    print(
        f"wrote {args.out}: {len(dataset.lemmas)} lemmas, "
        f"{sum(len(l.pools) for l in dataset.lemmas)} pools"
    )
    return 0


def cmd_analyze_selfsim(args) -> int:
    archive = EmbeddingArchive(args.archive)
    dataset = _load_pools(args)
    freq_ranges = None
    if args.group_by == "freq-range":
        freq_ranges = compute_freq_ranges(
            [lem.frequency for lem in dataset.lemmas if lem.frequency is not None]
        )
    profiles = simstats.layer_profiles(
        archive,
        dataset,
        grouping=args.group_by,
        pool_setting=args.pool_setting,
        freq_ranges=freq_ranges,
    )
    if not profiles:
        raise PolyprobeError("no non-empty groups to profile")
    rows = _profile_rows(profiles)
    chart = _profile_chart(
        profiles, f"Mean self-similarity by {args.group_by}", timestamp=not args.no_timestamp
    )
    write_outputs(
        Path(args.out),
        {
            "selfsim.csv": _csv_bytes(rows, ["group", "layer", "mean", "n"]),
            "selfsim.svg": chart,
            "run_config.json": _run_config(args),
        },
    )
    print(f"wrote selfsim.csv and selfsim.svg to {args.out} ({len(profiles)} groups)")
    return 0


def cmd_analyze_anisotropy(args) -> int:
    archive = EmbeddingArchive(args.archive)
    dataset = _load_pools(args)
    profiles = simstats.layer_profiles(archive, dataset, grouping="setting")
    by_group = {p.group: p for p in profiles}
    if "poly-rand" not in by_group:
        raise PolyprobeError("anisotropy needs poly-rand pools in the archive")
    keys = sorted({lem.key for lem in dataset.lemmas})
    rng = np.random.default_rng(derive_seed(args.seed, "rand-sim"))
    pairs = simstats.random_pairs(keys, args.n_pairs, rng)
    randsim = simstats.rand_sim_profile(archive, pairs, rng)
    profile = simstats.aniso_diff(by_group["poly-rand"].scores, randsim)
    layers = sorted(randsim)
    rows = [
        {
            "layer": layer,
            "selfsim_poly_rand": by_group["poly-rand"].scores[layer],
            "randsim": profile.randsim[layer],
            "diff": profile.diff[layer],
        }
        for layer in layers
    ]
    chart = line_chart(
        {
            "randsim": (layers, [profile.randsim[l] for l in layers]),
            "diff": (layers, [profile.diff[l] for l in layers]),
        },
        title=f"Anisotropy over {args.n_pairs} random pairs",
        ylabel="mean cosine",
        timestamp=not args.no_timestamp,
    )
    write_outputs(
        Path(args.out),
        {
            "anisotropy.csv": _csv_bytes(
                rows, ["layer", "selfsim_poly_rand", "randsim", "diff"]
            ),
            "anisotropy.svg": chart,
            "run_config.json": _run_config(args),
        },
    )
    print(f"wrote anisotropy.csv and anisotropy.svg to {args.out}")
    return 0


def cmd_analyze_significance(args) -> int:
    archive = EmbeddingArchive(args.archive)
    dataset = _load_pools(args)
    grouping = args.group_by
    if grouping not in ADJACENT:
        raise PolyprobeError(f"significance supports group-by setting|band, not {grouping!r}")
    layers = _layers_arg(archive, args.layers)

    def group_items(label: str):
        if grouping == "setting":
            return [(lem, label) for lem in dataset.lemmas if label in lem.pools]
        items = []
        for lem in dataset.lemmas:
            if lem.band != label:
                continue
            setting = "mono" if "mono" in lem.pools else args.pool_setting
            if setting in lem.pools:
                items.append((lem, setting))
        return items

    rows = []
    results = []
    for group_a, group_b in ADJACENT[grouping]:
        items_a, items_b = group_items(group_a), group_items(group_b)
        if len(items_a) < 3 or len(items_b) < 3:
            continue
        for layer in layers:
            sample_a = simstats.per_lemma_scores(archive, items_a, layer)
            sample_b = simstats.per_lemma_scores(archive, items_b, layer)
            result = simstats.compare_groups(sample_a, sample_b, args.alpha_normality)
            results.append(result)
            rows.append({"comparison": f"{group_a} vs {group_b}", "layer": layer, "result": result})
    if not results:
        raise PolyprobeError("no comparisons with enough lemmas")
    simstats.adjust_results(results)
    csv_rows = [
        {
            "comparison": row["comparison"],
            "layer": row["layer"],
            "test": row["result"].kind,
            "stat": row["result"].statistic,
            "p": row["result"].p_value,
            "p_adj": row["result"].p_adjusted,
            "significant": "yes" if row["result"].p_adjusted < args.alpha else "no",
        }
        for row in rows
    ]
    write_outputs(
        Path(args.out),
        {
            "tests.csv": _csv_bytes(
                csv_rows, ["comparison", "layer", "test", "stat", "p", "p_adj", "significant"]
            ),
            "run_config.json": _run_config(args),
        },
    )
    n_significant = sum(1 for r in csv_rows if r["significant"] == "yes")
    print(f"wrote tests.csv to {args.out}: {n_significant}/{len(csv_rows)} significant at {args.alpha}")
    return 0


def cmd_classify(args) -> int:
    archive = EmbeddingArchive(args.archive)
    dataset = _load_pools(args)
    labels = polyclass.task_labels(dataset, args.task)
    if args.task == "bands":
        labels = polyclass.balance_classes(
            labels, np.random.default_rng(derive_seed(args.seed, "class-balance"))
        )
    split_ = polyclass.split(
        labels, rng=np.random.default_rng(derive_seed(args.seed, "split"))
    )
    layers = _layers_arg(archive, args.layers)

    report: dict = {
        "task": args.task,
        "features": args.features,
        "seed": args.seed,
        "l2": args.l2,
        "split_sizes": dict(zip(("train", "dev", "test"), split_.sizes())),
        "classes": sorted({labels[k] for k in labels}, key=str),
    }
    frequencies = {}
    if args.frequencies:
        table = load_frequency_table(args.frequencies)
        frequencies = {key: table.get(*key) for key in labels}

    if args.features in ("selfsim", "paircos"):
        sweep = polyclass.layer_sweep(
            archive, dataset, labels, args.features, split_, l2=args.l2, layers=layers,
            task=args.task,
        )
        report["dev_accuracy_by_layer"] = {str(l): sweep.dev_by_layer[l] for l in layers}
        report["chosen_layer"] = sweep.chosen_layer
        report["test_accuracy"] = sweep.test_accuracy
        report["train_accuracy"] = sweep.reports[sweep.chosen_layer].train
    elif args.features == "logfreq":
        if not args.frequencies:
            raise PolyprobeError("--features logfreq requires --frequencies")
        freq_report = polyclass.frequency_baseline(frequencies, labels, split_, l2=args.l2)
        report["test_accuracy"] = freq_report.test
        report["train_accuracy"] = freq_report.train
        report["dev_accuracy"] = freq_report.dev
    else:
        raise PolyprobeError(f"unknown feature kind {args.features!r}")

    baselines = {"same_class": polyclass.majority_baseline(labels, split_).test}
    if frequencies:
        baselines["frequency"] = polyclass.frequency_baseline(
            frequencies, labels, split_, l2=args.l2
        ).test
    report["baselines"] = baselines

    write_outputs(
        Path(args.out),
        {
            "report.json": json.dumps(report, indent=2, sort_keys=True) + "\n",
            "run_config.json": _run_config(args),
        },
    )
    summary = report.get("test_accuracy")
    print(f"wrote report.json to {args.out}: test accuracy {summary:.3f}")
    return 0


def cmd_clusterability(args) -> int:
    usim = clusterlab.load_usim(args.usim)
    gold = {}
    for lemma in sorted(usim):
        try:
            gold[lemma] = clusterlab.gold_scores(usim[lemma])
        except PolyprobeError:
            continue
    if not gold:
        raise PolyprobeError("no lemma has usable gold judgments")

    score_rows: list[clusterlab.ClusterabilityScore] = []
    representations: list[str] = []

    def add_scores(representation: str, layer, per_lemma: dict):
        for lemma in sorted(per_lemma):
            k, sil, vr, sep = per_lemma[lemma]
            score_rows.append(
                clusterlab.ClusterabilityScore(
                    lemma=lemma,
                    representation=representation,
                    layer=layer,
                    chosen_k=k,
                    sil=sil,
                    vr=vr,
                    sep=sep,
                )
            )

    # Gold-similarity agglomerative clustering (no vectors: SIL only).
    per_lemma = {}
    for lemma in sorted(gold):
        try:
            dist, _ = clusterlab.gold_distance_matrix(usim[lemma])
        except PolyprobeError:
            continue
        per_lemma[lemma] = clusterlab.score_gold_distances(dist)
    if per_lemma:
        add_scores("gold-agg", None, per_lemma)
        representations.append("gold-agg")

    # Contextual representations per layer, by k-means and by agglomerative
    # clustering on the cosine distance matrix.
    if args.archive:
        archive = EmbeddingArchive(args.archive)
        layers = _layers_arg(archive, args.layers)
        for method, representation in (("kmeans", "contextual-kmeans"), ("agg", "contextual-agg")):
            for layer in layers:
                per_lemma = {}
                for lemma in sorted(gold):
                    entry_key = _find_entry(archive, lemma)
                    if entry_key is None:
                        continue
                    points = archive.read_vectors(*entry_key, layer).astype(np.float64)
                    rng = np.random.default_rng(
                        derive_seed(args.seed, f"clus-{representation}-{layer}-{lemma}")
                    )
                    if method == "kmeans":
                        per_lemma[lemma] = clusterlab.score_points(points, rng)
                    else:
                        dist = simstats.cosine_distance_matrix(points)
                        per_lemma[lemma] = clusterlab.score_points(
                            points, rng, method="agglomerative", dist=dist
                        )
                if per_lemma:
                    add_scores(representation, layer, per_lemma)
            if any(r.representation == representation for r in score_rows):
                representations.append(representation)

    # Substitute vectors: gold annotator counts and/or filtered model scores.
    if args.gold_subs:
        gold_subs = substvec.load_gold_substitutes(args.gold_subs)
        per_lemma = {}
        for lemma in sorted(gold):
            if lemma not in gold_subs:
                continue
            vectors = [
                substvec.build_gold_vector(instance, gold_subs[lemma][instance])
                for instance in sorted(gold_subs[lemma])
            ]
            matrix, _ = substvec.vectors_to_matrix(vectors)
            rng = np.random.default_rng(derive_seed(args.seed, f"clus-gold-sub-{lemma}"))
            per_lemma[lemma] = clusterlab.score_points(matrix, rng)
        if per_lemma:
            add_scores("gold-sub", None, per_lemma)
            representations.append("gold-sub")

    if args.sub_scores:
        if not args.relations:
            raise PolyprobeError("--sub-scores requires --relations")
        relations = substvec.ParaphraseRelation.from_tsv(args.relations)
        scored = substvec.load_substitute_scores(args.sub_scores)
        per_lemma = {}
        for lemma in sorted(gold):
            if lemma not in scored:
                continue
            vectors = [
                substvec.build_auto_vector(instance, scored[lemma][instance], relations)
                for instance in sorted(scored[lemma])
            ]
            matrix, _ = substvec.vectors_to_matrix(vectors)
            rng = np.random.default_rng(derive_seed(args.seed, f"clus-auto-sub-{lemma}"))
            per_lemma[lemma] = clusterlab.score_points(matrix, rng)
        if per_lemma:
            add_scores("auto-sub", None, per_lemma)
            representations.append("auto-sub")

    if not score_rows:
        raise PolyprobeError("no representation could be scored")

    clus_rows = [
        {
            "lemma": r.lemma,
            "representation": r.representation,
            "layer": r.layer,
            "chosen_k": r.chosen_k,
            "sil": r.sil,
            "vr": r.vr,
            "sep": r.sep,
            "uiaa": gold[r.lemma].uiaa if r.lemma in gold else None,
            "umid": gold[r.lemma].umid if r.lemma in gold else None,
        }
        for r in score_rows
    ]

    # Correlations: per representation pick the best layer by |rho|.
    corr_rows = []
    uiaa = {lemma: gold[lemma].uiaa for lemma in gold}
    umid = {lemma: gold[lemma].umid for lemma in gold}
    for representation in representations:
        layers_here = sorted(
            {r.layer for r in score_rows if r.representation == representation},
            key=lambda x: (x is None, x),
        )
        for metric in ("sil", "vr", "sep"):
            for gold_name, gold_values in (("uiaa", uiaa), ("umid", umid)):
                best = None
                for layer in layers_here:
                    values = {
                        r.lemma: getattr(r, metric)
                        for r in score_rows
                        if r.representation == representation and r.layer == layer
                    }
                    try:
                        rho, p = clusterlab.correlate(values, gold_values)
                    except PolyprobeError:
                        continue
                    if best is None or abs(rho) > abs(best[0]):
                        best = (rho, p, layer)
                if best is None:
                    continue
                rho, p, layer = best
                tag = representation if layer is None else f"{representation}@l{layer}"
                corr_rows.append(
                    {
                        "representation": tag,
                        "metric": metric,
                        "gold": gold_name,
                        "rho": rho,
                        "p": p,
                        "significant": "yes" if p < args.alpha else "no",
                    }
                )

    write_outputs(
        Path(args.out),
        {
            "clusterability.csv": _csv_bytes(
                clus_rows,
                ["lemma", "representation", "layer", "chosen_k", "sil", "vr", "sep", "uiaa", "umid"],
            ),
            "correlations.csv": _csv_bytes(
                corr_rows, ["representation", "metric", "gold", "rho", "p", "significant"]
            ),
            "run_config.json": _run_config(args),
        },
    )
    print(
        f"wrote clusterability.csv ({len(clus_rows)} rows) and correlations.csv "
        f"({len(corr_rows)} rows) to {args.out}"
    )
    return 0


def _find_entry(archive: EmbeddingArchive, lemma: str):
    # Usim lemmas are bare; archive entries are (lemma, pos, setting).
    for key in sorted(archive.entries):
        if key[0] == lemma:
            return key
    return None


def cmd_report_figures(args) -> int:
    archive = EmbeddingArchive(args.archive)
    if len(archive) == 0:
        raise PolyprobeError("archive has no entries")
    dataset = _load_pools(args)
    files: dict[str, bytes | str] = {"run_config.json": _run_config(args)}

    setting_profiles = simstats.layer_profiles(archive, dataset, grouping="setting")
    if setting_profiles:
        files["selfsim_by_setting.csv"] = _csv_bytes(
            _profile_rows(setting_profiles), ["group", "layer", "mean", "n"]
        )
        files["selfsim_by_setting.svg"] = _profile_chart(
            setting_profiles, "Mean self-similarity by pool setting", not args.no_timestamp
        )
    band_profiles = simstats.layer_profiles(archive, dataset, grouping="band")
    if band_profiles:
        files["selfsim_by_band.csv"] = _csv_bytes(
            _profile_rows(band_profiles), ["group", "layer", "mean", "n"]
        )
        files["selfsim_by_band.svg"] = _profile_chart(
            band_profiles, "Mean self-similarity by polysemy band", not args.no_timestamp
        )
    if len({lem.key for lem in dataset.lemmas}) >= 2:
        keys = sorted({lem.key for lem in dataset.lemmas})
        rng = np.random.default_rng(derive_seed(args.seed, "rand-sim"))
        pairs = simstats.random_pairs(keys, args.n_pairs, rng)
        randsim = simstats.rand_sim_profile(archive, pairs, rng)
        by_group = {p.group: p for p in setting_profiles}
        if "poly-rand" in by_group:
            profile = simstats.aniso_diff(by_group["poly-rand"].scores, randsim)
            layers = sorted(randsim)
            files["anisotropy.svg"] = line_chart(
                {
                    "randsim": (layers, [profile.randsim[l] for l in layers]),
                    "diff": (layers, [profile.diff[l] for l in layers]),
                },
                title="Anisotropy",
                ylabel="mean cosine",
                timestamp=not args.no_timestamp,
            )
    write_outputs(Path(args.out), files)
    print(f"wrote {len(files)} figure/report files to {args.out}")
    return 0


# ---------------------------------------------------------------------------
# Parser
# ---------------------------------------------------------------------------

def _add_common(parser: argparse.ArgumentParser, out_required: bool = True):
    parser.add_argument("--seed", type=int, default=0, help="run seed (fanned out per purpose)")
    parser.add_argument("--alpha", type=float, default=None, help="significance threshold")
    parser.add_argument("--layers", default=None, help="layer selection, e.g. 1-12 or 3,7 or all")
    parser.add_argument("--out", required=out_required, help="output directory")
    parser.add_argument(
        "--no-timestamp", action="store_true", help="omit the timestamp comment from SVGs"
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="polyprobe",
        description="Polysemy and sense-clusterability analysis of contextualised embeddings",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    pools = sub.add_parser("pools", help="sentence-pool datasets")
    pools_sub = pools.add_subparsers(dest="subcommand", required=True)
    build = pools_sub.add_parser("build", help="build a pool dataset from a corpus")
    build.add_argument("--corpus", required=True, help="annotated corpus (JSONL)")
    build.add_argument("--inventory", default=None, help="sense inventory TSV")
    build.add_argument("--frequencies", default=None, help="frequency table TSV")
    build.add_argument("--n-per-class", type=int, required=True, dest="n_per_class")
    build.add_argument("--balance", choices=["none", "pos", "freq"], default="none")
    _add_common(build)
    build.set_defaults(func=cmd_pools_build)

    analyze = sub.add_parser("analyze", help="similarity and significance analyses")
    analyze_sub = analyze.add_subparsers(dest="subcommand", required=True)

    selfsim = analyze_sub.add_parser("selfsim", help="layer-wise self-similarity profiles")
    selfsim.add_argument("--archive", required=True)
    selfsim.add_argument("--pools", required=True)
    selfsim.add_argument(
        "--group-by",
        choices=["setting", "band", "pos", "freq-range"],
        default="setting",
        dest="group_by",
    )
    selfsim.add_argument("--pool-setting", default="poly-rand", dest="pool_setting")
    selfsim.add_argument("--frequencies", default=None)
    _add_common(selfsim)
    selfsim.set_defaults(func=cmd_analyze_selfsim)

    aniso = analyze_sub.add_parser("anisotropy", help="random-pair similarity and diff")
    aniso.add_argument("--archive", required=True)
    aniso.add_argument("--pools", required=True)
    aniso.add_argument("--n-pairs", type=int, default=2183, dest="n_pairs")
    aniso.add_argument("--frequencies", default=None)
    _add_common(aniso)
    aniso.set_defaults(func=cmd_analyze_anisotropy)

    signif = analyze_sub.add_parser("significance", help="gated two-sample tests with FDR")
    signif.add_argument("--archive", required=True)
    signif.add_argument("--pools", required=True)
    signif.add_argument("--group-by", choices=["setting", "band"], default="setting", dest="group_by")
    signif.add_argument("--pool-setting", default="poly-rand", dest="pool_setting")
    signif.add_argument("--frequencies", default=None)
    signif.add_argument(
        "--alpha-normality", type=float, default=0.05, dest="alpha_normality",
        help="Shapiro-Wilk gate level",
    )
    _add_common(signif)
    signif.set_defaults(func=cmd_analyze_significance)

    classify = sub.add_parser("classify", help="polysemy-level probes")
    classify.add_argument("--archive", required=True)
    classify.add_argument("--pools", required=True)
    classify.add_argument("--task", choices=["binary", "bands"], required=True)
    classify.add_argument(
        "--features", choices=["selfsim", "paircos", "logfreq"], required=True
    )
    classify.add_argument("--frequencies", default=None)
    classify.add_argument("--l2", type=float, default=1.0)
    _add_common(classify)
    classify.set_defaults(func=cmd_classify)

    clus = sub.add_parser("clusterability", help="sense clusterability vs gold judgments")
    clus.add_argument("--usim", required=True, help="usage-similarity judgments TSV")
    clus.add_argument("--archive", default=None)
    clus.add_argument("--gold-subs", default=None, dest="gold_subs")
    clus.add_argument("--sub-scores", default=None, dest="sub_scores")
    clus.add_argument("--relations", default=None)
    _add_common(clus)
    clus.set_defaults(func=cmd_clusterability)

    report = sub.add_parser("report", help="figure generation")
    report_sub = report.add_subparsers(dest="subcommand", required=True)
    figures = report_sub.add_parser("figures", help="the standard profile figures")
    figures.add_argument("--archive", required=True)
    figures.add_argument("--pools", required=True)
    figures.add_argument("--n-pairs", type=int, default=200, dest="n_pairs")
    figures.add_argument("--frequencies", default=None)
    _add_common(figures)
    figures.set_defaults(func=cmd_report_figures)

    return parser


_DEFAULT_ALPHA = {
    cmd_analyze_significance: 0.01,  # pool/band comparisons
    cmd_clusterability: 0.05,  # correlations
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "alpha", None) is None:
        args.alpha = _DEFAULT_ALPHA.get(args.func, 0.05)
    try:
        return args.func(args)
    except PolyprobeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
