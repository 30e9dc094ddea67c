"""Command-line surface.

Subcommands: validate, entropy, distance, semdist, capacity, palette,
predict, analyze. Output is JSON by default (--output csv for tabular
commands); batch capacity runs stream newline-delimited JSON. Exit codes:
0 success, 1 data/validation failure, 2 usage error (including unknown
concept or feature ids).
"""

from __future__ import annotations

import argparse
import csv
import json
import sys

from . import __version__
from .analysis import (
    build_frame,
    dependent_correlation_compare,
    fisher_r_to_z_compare,
    ols_regression,
    pearson_r,
)
from .capacity import (
    DEFAULT_THRESHOLD,
    capacity_statistics,
    exhaustive_pair_semantics,
    iter_capacity_reports,
    max_capacity,
)
from .errors import SemdiscError, UnknownIdError
from .io import (
    load_association_csv,
    load_uw71,
    palette_entry,
    with_library_coordinates,
)
from .model import (
    FeatureLibrary,
    FeatureRecord,
    distributions,
    entropy,
    generalized_total_variation,
    normalize,
    specificity_scores,
    total_variation,
)
from .montecarlo import (
    MonteCarloConfig,
    run_monte_carlo,
    semantic_distance_analytic,
)


def _split(arg: str) -> list[str]:
    items = [s.strip() for s in arg.split(",") if s.strip()]
    if not items:
        raise UnknownIdError("empty id list")
    return items


def _emit_json(obj) -> None:
    sys.stdout.write(json.dumps(obj, indent=2) + "\n")


def _emit_rows(rows: list[dict], output: str) -> None:
    if output == "csv":
        writer = csv.writer(sys.stdout, lineterminator="\n")
        keys = list(rows[0].keys())
        writer.writerow(keys)
        for row in rows:
            writer.writerow([_csv_cell(row[k]) for k in keys])
    else:
        _emit_json(rows)


def _csv_cell(v):
    if isinstance(v, (list, tuple)):
        return ";".join(str(x) for x in v)
    return v


def _config(args) -> MonteCarloConfig:
    return MonteCarloConfig(samples=args.samples, seed=args.seed)


def _report_dict(report) -> dict:
    out = {
        "concepts": list(report.concepts),
        "max_capacity": report.max_capacity,
        "chosen_features": list(report.chosen_features),
        "distribution_difference": report.distribution_difference,
        "mean_entropy": report.mean_entropy,
        "method": report.method,
        "samples": report.samples,
        "seed": report.seed,
    }
    if report.exhaustive is not None:
        out["exhaustive"] = report.exhaustive
    return out


def _load_library(source: str) -> FeatureLibrary:
    if source == "uw71":
        return load_uw71()
    records = []
    with open(source, newline="", encoding="utf-8") as fh:
        for row in csv.DictReader(fh):
            fid = row.get("index") or row.get("feature_id")
            records.append(
                FeatureRecord(
                    id=fid,
                    lab=(float(row["L"]), float(row["a"]), float(row["b"])),
                    sorted_position=(
                        int(row["sorted_position"])
                        if row.get("sorted_position")
                        else None
                    ),
                )
            )
    return FeatureLibrary(tuple(records))


def cmd_validate(args) -> int:
    table = load_association_csv(args.path)
    _emit_json(
        {
            "status": "ok",
            "path": str(args.path),
            "features": table.n_features,
            "concepts": list(table.concepts.concepts),
        }
    )
    return 0


def cmd_entropy(args) -> int:
    table = load_association_csv(args.path)
    names = table.concepts.concepts
    values = [entropy(normalize(table, c)) for c in names]
    scores = specificity_scores(values)
    rows = [
        {"concept": c, "entropy": h, "specificity": s}
        for c, h, s in zip(names, values, scores)
    ]
    _emit_rows(rows, args.output)
    return 0


def cmd_distance(args) -> int:
    table = load_association_csv(args.path)
    concepts = _split(args.concepts)
    dists = [normalize(table, c) for c in concepts]
    if len(dists) == 2:
        metric, value = "tv", total_variation(dists[0], dists[1])
    else:
        metric, value = "gtv", generalized_total_variation(dists)
    _emit_json({"concepts": concepts, "metric": metric, "value": value})
    return 0


def cmd_semdist(args) -> int:
    table = load_association_csv(args.path)
    concepts = _split(args.concepts)
    features = _split(args.features)
    square = table.subset(concepts=concepts, features=features)
    if len(concepts) == 2 and len(features) == 2:
        _emit_json(
            {
                "concepts": concepts,
                "features": features,
                "method": "analytic",
                "delta_s": semantic_distance_analytic(square),
            }
        )
        return 0
    result = run_monte_carlo(square, _config(args))
    _emit_json(
        {
            "concepts": concepts,
            "features": features,
            "method": "monte_carlo",
            "delta_s": result.delta_s,
            "modal_proportion": result.modal_proportion,
            "contrast": result.contrast_by_feature(),
            "optimal": result.optimal.mapping,
            "samples": result.samples,
            "seed": result.seed,
        }
    )
    return 0


def cmd_capacity(args) -> int:
    table = load_association_csv(args.path)
    config = _config(args)
    if args.all:
        if args.k is None:
            raise UnknownIdError("--all requires --k")
        reports = iter_capacity_reports(
            table,
            args.k,
            config,
            workers=args.workers,
            include_exhaustive=args.exhaustive,
            threshold=args.threshold,
        )
        if args.output == "csv":
            writer = None
            for report in reports:
                row = _report_dict(report)
                row.pop("exhaustive", None)
                if writer is None:
                    writer = csv.writer(sys.stdout, lineterminator="\n")
                    writer.writerow(list(row.keys()))
                writer.writerow([_csv_cell(v) for v in row.values()])
        else:
            for report in reports:
                sys.stdout.write(
                    json.dumps(_report_dict(report), separators=(",", ":"))
                    + "\n"
                )
        return 0
    if not args.concepts:
        raise UnknownIdError("capacity needs --all or --concepts")
    concepts = _split(args.concepts)
    report = max_capacity(table, concepts, config)
    out = _report_dict(report)
    if args.exhaustive and len(concepts) == 2:
        pairs = exhaustive_pair_semantics(table, concepts)
        out["exhaustive"] = capacity_statistics(pairs, args.threshold)
    _emit_json(out)
    return 0


def cmd_palette(args) -> int:
    table = load_association_csv(args.path)
    table = with_library_coordinates(table, _load_library(args.library))
    concepts = _split(args.concepts)
    config = _config(args)
    report = max_capacity(table, concepts, config)
    square = table.subset(
        concepts=concepts, features=list(report.chosen_features)
    )
    result = run_monte_carlo(square, config)
    contrast = result.contrast_by_feature()
    entries = []
    for concept, fid in zip(concepts, report.chosen_features):
        record = next(
            f for f in square.library.features if f.id == fid
        )
        entry = {"concept": concept, **palette_entry(record)}
        entry["contrast"] = contrast[fid]
        entries.append(entry)
    _emit_json(
        {
            "concepts": concepts,
            "palette": entries,
            "delta_s": result.delta_s,
            "max_capacity": report.max_capacity,
            "samples": config.samples,
            "seed": config.seed,
        }
    )
    return 0


def cmd_predict(args) -> int:
    table = load_association_csv(args.path)
    concepts = _split(args.concepts)
    features = _split(args.features)
    square = table.subset(concepts=concepts, features=features)
    result = run_monte_carlo(square, _config(args))
    matrix = [[float(v) for v in row] for row in result.response_matrix]
    if args.output == "csv":
        writer = csv.writer(sys.stdout, lineterminator="\n")
        writer.writerow(["feature_id", *concepts])
        for fid, row in zip(features, matrix):
            writer.writerow([fid, *row])
    else:
        _emit_json(
            {
                "concepts": concepts,
                "features": features,
                "matrix": matrix,
                "samples": args.samples,
                "seed": args.seed,
            }
        )
    return 0


def cmd_analyze(args) -> int:
    table = load_association_csv(args.path)
    frame = build_frame(table, args.k, _config(args), workers=args.workers)
    rows = frame.rows()
    if args.output == "csv":
        _emit_rows(rows, "csv")
        return 0
    mask = frame.valid_mask
    cap = frame.capacity[mask]
    log_dd = frame.log_distribution_difference[mask]
    log_spec = frame.log_specificity[mask]
    r_dd = pearson_r(cap, log_dd)
    r_spec = pearson_r(cap, log_spec)
    r12 = pearson_r(log_dd, log_spec)
    regression = ols_regression(
        cap,
        [log_dd, log_spec],
        names=["distribution_difference", "specificity"],
    )
    _emit_json(
        {
            "k": args.k,
            "rows": rows,
            "correlations": {
                "capacity_vs_distribution_difference": r_dd,
                "capacity_vs_specificity": r_spec,
                "predictors": r12,
            },
            "fisher": {
                "independent": fisher_r_to_z_compare(
                    r_dd["r"], r_spec["r"], r_dd["df"]
                ),
                "dependent": dependent_correlation_compare(
                    r_dd["r"], r_spec["r"], r12["r"], int(mask.sum())
                ),
            },
            "regression": regression,
            "samples": args.samples,
            "seed": args.seed,
        }
    )
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="semdisc",
        description="Semantic discriminability metrics and palette generation",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, stochastic=False, workers=False):
        p.add_argument("path", help="association CSV file")
        p.add_argument(
            "--output", choices=["json", "csv"], default="json"
        )
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--samples", type=int, default=1000)
        if workers:
            p.add_argument("--workers", type=int, default=1)

    p = sub.add_parser("validate", help="check an association CSV")
    common(p)
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("entropy", help="per-concept entropy and specificity")
    common(p)
    p.set_defaults(func=cmd_entropy)

    p = sub.add_parser("distance", help="TV or GTV between concepts")
    common(p)
    p.add_argument("--concepts", required=True)
    p.set_defaults(func=cmd_distance)

    p = sub.add_parser(
        "semdist", help="semantic distance of a feature set for a concept set"
    )
    common(p)
    p.add_argument("--concepts", required=True)
    p.add_argument("--features", required=True)
    p.set_defaults(func=cmd_semdist)

    p = sub.add_parser("capacity", help="max capacity of concept subsets")
    common(p, workers=True)
    p.add_argument("--k", type=int)
    p.add_argument("--all", action="store_true")
    p.add_argument("--concepts")
    p.add_argument("--threshold", type=float, default=DEFAULT_THRESHOLD)
    p.add_argument("--exhaustive", action="store_true")
    p.set_defaults(func=cmd_capacity)

    p = sub.add_parser("palette", help="generate an optimal color palette")
    common(p)
    p.add_argument("--concepts", required=True)
    p.add_argument("--library", default="uw71")
    p.set_defaults(func=cmd_palette)

    p = sub.add_parser(
        "predict", help="assignment-proportion prediction matrix"
    )
    common(p)
    p.add_argument("--concepts", required=True)
    p.add_argument("--features", required=True)
    p.set_defaults(func=cmd_predict)

    p = sub.add_parser(
        "analyze", help="capacity/difference/specificity statistics"
    )
    common(p, workers=True)
    p.add_argument("--k", type=int, required=True)
    p.set_defaults(func=cmd_analyze)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UnknownIdError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except SemdiscError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
