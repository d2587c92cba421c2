"""Command-line interface.

Subcommands: ``simulate``, ``estimate``, ``confidence``, ``experiment``,
``rates``, ``ingest``. Shared flags (given after the subcommand):

* ``--seed <int>``   root seed for stochastic commands (default 0)
* ``--out <path>``   output destination; omitted or ``-`` means stdout
* ``--format``       ``json`` or ``csv`` where both renderings exist

Exit codes: 0 success, 2 invalid input (flags, schemas, parameter ranges),
1 unexpected runtime failure. Diagnostics go to stderr, data to stdout or
``--out``. All output is deterministic given the full flag set: floats are
serialized with 17 significant digits in JSON and 12 in CSV.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import sys
from pathlib import Path

from . import serialize
from .bounds import ConfidenceSpec, confidence_radius
from .contamination import ContaminationSpec, generate
from .corpus import CorpusProfile, ingest, merge_profiles
from .errors import RobustSimplexError
from .montecarlo import (
    ExperimentPlan,
    fit_rate,
    result_from_csv,
    result_to_csv,
    result_to_json_obj,
    run_experiment,
)
from .simplex import (
    ProbVector,
    Sample,
    distance,
    parse_distance,
    sample_mean,
    wasserstein,
)


def _load_json(path: str) -> dict:
    with open(path, encoding="utf-8") as fh:
        return json.load(fh)


def _emit(text: str, out: str | None) -> None:
    if out is None or out in ("-", "stdout"):
        sys.stdout.write(text)
    else:
        Path(out).write_text(text, encoding="utf-8")


def _require_json_format(fmt: str | None, command: str) -> None:
    if fmt == "csv":
        raise ValueError(f"{command} supports only --format json")


# ---------------------------------------------------------------------------
# Subcommands
# ---------------------------------------------------------------------------


def cmd_simulate(args) -> str:
    _require_json_format(args.format, "simulate")
    spec = ContaminationSpec.from_json_obj(_load_json(args.spec))
    sample = generate(spec, args.n, args.seed)
    return serialize.dumps(sample.to_json_obj()) + "\n"


def cmd_estimate(args) -> str:
    _require_json_format(args.format, "estimate")
    sample = Sample.from_json_obj(_load_json(args.sample))
    mean = sample_mean(sample)
    report: dict = {
        "n": sample.n,
        "k": sample.k,
        "mean": mean.to_json_obj(),
        "support_size": mean.sparsity,
    }
    if args.truth is not None:
        truth = ProbVector.from_json_obj(_load_json(args.truth))
        q = float(args.wasserstein_q)
        report["distances"] = {
            "tv": distance(mean, truth, parse_distance("tv")),
            "hellinger": distance(mean, truth, parse_distance("hellinger")),
            "l2": distance(mean, truth, parse_distance("l2")),
            "linf": distance(mean, truth, parse_distance("linf")),
            "wasserstein_q": q,
            "wasserstein": distance(mean, truth, wasserstein(q)),
        }
    return serialize.dumps(report) + "\n"


def cmd_confidence(args) -> str:
    if args.s is not None:
        s, s_source = args.s, "given"
    else:
        sample = Sample.from_json_obj(_load_json(args.from_sample))
        s, s_source = sample_mean(sample).sparsity, "sample_support"
    spec = ConfidenceSpec(n=args.n, s=s, epsilon=args.epsilon, delta=args.delta)
    kind = parse_distance(args.kind)
    radius = confidence_radius(spec, kind)
    if args.format == "csv":
        header = "kind,radius,n,s,epsilon,delta"
        line = serialize.csv_line(
            [kind.label, radius, spec.n, spec.s, spec.epsilon, spec.delta]
        )
        return header + "\n" + line + "\n"
    report = {
        "kind": kind.label,
        "radius": radius,
        "n": spec.n,
        "s": spec.s,
        "epsilon": spec.epsilon,
        "delta": spec.delta,
        "s_source": s_source,
    }
    return serialize.dumps(report) + "\n"


def cmd_experiment(args) -> str:
    plan = ExperimentPlan.from_json_obj(_load_json(args.plan))
    if args.trials is not None:
        plan = dataclasses.replace(plan, trials=args.trials)
    result = run_experiment(plan, threads=args.threads)
    if args.format == "json":
        return serialize.dumps(result_to_json_obj(result)) + "\n"
    return result_to_csv(result)


def cmd_rates(args) -> str:
    _require_json_format(args.format, "rates")
    with open(args.csv, encoding="utf-8") as fh:
        result = result_from_csv(fh.read())
    kind = parse_distance(args.distance)
    fit = fit_rate(result, kind, args.axis)
    report = {
        "distance": kind.label,
        "axis": args.axis,
        "slope": fit.slope,
        "intercept": fit.intercept,
        "r2": fit.r2,
        "points": fit.points,
    }
    return serialize.dumps(report) + "\n"


def cmd_ingest(args) -> str:
    _require_json_format(args.format, "ingest")
    profile: CorpusProfile | None = None
    for path in args.files:
        name = args.name if args.name is not None else Path(args.files[0]).stem
        with open(path, "rb") as fh:
            piece = ingest(fh, k=args.k, name=name)
        profile = piece if profile is None else merge_profiles(profile, piece, name=name)
    assert profile is not None
    if profile.replaced_byte_runs:
        print(
            f"warning: replaced {profile.replaced_byte_runs} invalid UTF-8 byte runs",
            file=sys.stderr,
        )
    return serialize.dumps(profile.to_json_obj()) + "\n"


# ---------------------------------------------------------------------------
# Parser
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0, help="root seed (default 0)")
    common.add_argument("--out", default=None, help="output path; '-' for stdout")
    common.add_argument(
        "--format", choices=("json", "csv"), default=None, help="output rendering"
    )

    parser = argparse.ArgumentParser(
        prog="robustsimplex",
        description=(
            "Outlier-robust mean estimation on the probability simplex: "
            "contaminated-sample generation, estimation, confidence radii, "
            "Monte Carlo sweeps, rate fits, and corpus ingestion."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("simulate", parents=[common], help="draw a contaminated sample")
    p.add_argument("--spec", required=True, help="contamination spec JSON file")
    p.add_argument("--n", required=True, type=int, help="sample size")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("estimate", parents=[common], help="sample mean and errors")
    p.add_argument("--sample", required=True, help="sample JSON file")
    p.add_argument("--truth", default=None, help="reference vector JSON file")
    p.add_argument(
        "--wasserstein-q", type=float, default=1.0, help="order of the Wasserstein report"
    )
    p.set_defaults(func=cmd_estimate)

    p = sub.add_parser("confidence", parents=[common], help="confidence-region radius")
    p.add_argument("--n", required=True, type=int)
    p.add_argument("--epsilon", required=True, type=float)
    p.add_argument("--delta", required=True, type=float)
    p.add_argument("--kind", required=True, choices=("tv", "hellinger", "l2"))
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--s", type=int, default=None, help="known sparsity")
    group.add_argument(
        "--from-sample",
        default=None,
        help="derive s from the support of a sample's mean (pragmatic fallback, "
        "weaker than a known sparsity)",
    )
    p.set_defaults(func=cmd_confidence)

    p = sub.add_parser("experiment", parents=[common], help="run a sweep plan")
    p.add_argument("--plan", required=True, help="experiment plan JSON file")
    p.add_argument(
        "--threads", type=int, default=None, help="parallel trial cap (default: cores)"
    )
    p.add_argument(
        "--trials",
        type=int,
        default=None,
        help="override the plan's trials per sweep point (for quick runs)",
    )
    p.set_defaults(func=cmd_experiment)

    p = sub.add_parser("rates", parents=[common], help="log-log slope of a sweep CSV")
    p.add_argument("--csv", required=True, help="experiment CSV file")
    p.add_argument("--distance", required=True, help="distance label, e.g. tv")
    p.add_argument("--axis", required=True, choices=("n", "epsilon"))
    p.set_defaults(func=cmd_rates)

    p = sub.add_parser("ingest", parents=[common], help="sentence-length profile")
    p.add_argument("--k", type=int, default=100, help="histogram dimension (default 100)")
    p.add_argument("--name", default=None, help="profile name (default: first file stem)")
    p.add_argument("files", nargs="+", help="text files to ingest")
    p.set_defaults(func=cmd_ingest)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        text = args.func(args)
        _emit(text, args.out)
    except (RobustSimplexError, ValueError, TypeError, FileNotFoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except KeyError as exc:
        print(f"error: missing field {exc}", file=sys.stderr)
        return 2
    except Exception as exc:  # noqa: BLE001 - CLI boundary
        print(f"runtime error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
