"""Monte Carlo experiment harness: sweeps, quantile bands, coverage, rate fits.

An :class:`ExperimentPlan` fixes a contamination spec and sweeps one axis
(sample size ``n``, dimension ``k`` realized by rebinning the reference, or
contamination rate ``epsilon``). Every sweep point runs ``trials``
independent draws; trial ``t`` of sweep point ``i`` uses the seed
``derive_seed(root_seed, i, t)``, so results are bit-identical across runs
and across any degree of parallelism.

Per row the harness reports the mean error of the sample mean against the
reference vector, the 5th and 95th percentile of the per-trial errors
(nearest-rank on the sorted values), and the Monte Carlo standard error
(sample standard deviation over sqrt(trials)).

CSV output columns are exactly::

    sweep_axis,sweep_value,distance,mean_error,q05,q95,trials,mc_stderr
"""

from __future__ import annotations

import hashlib
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace

import numpy as np

from . import serialize
from .bounds import ConfidenceSpec, region_contains
from .contamination import (
    ContaminationSpec,
    derive_seed,
    mean_and_outliers,
    rebin_spec,
)
from .errors import InsufficientPoints, NonpositiveError
from .simplex import DistanceKind, ProbVector, distance_arrays, parse_distance

SWEEP_AXES = ("n", "k", "epsilon")

#: Trials per sweep point when a plan file does not say otherwise.
DEFAULT_TRIALS = 10_000

CSV_HEADER = "sweep_axis,sweep_value,distance,mean_error,q05,q95,trials,mc_stderr"


@dataclass(frozen=True)
class ExperimentPlan:
    """One sweep of repeated-trial risk estimation.

    ``n`` is the fixed sample size and is required (and only meaningful)
    when the sweep axis is not ``n``.
    """

    spec: ContaminationSpec
    sweep_axis: str
    sweep_values: tuple
    trials: int
    distances: tuple[DistanceKind, ...]
    root_seed: int
    n: int | None = None

    def __post_init__(self):
        if self.sweep_axis not in SWEEP_AXES:
            raise ValueError(
                f"unknown sweep axis {self.sweep_axis!r}; expected one of {SWEEP_AXES}"
            )
        values = tuple(self.sweep_values)
        if not values:
            raise ValueError("sweep_values must be nonempty")
        if self.sweep_axis in ("n", "k"):
            values = tuple(int(v) for v in values)
            if any(v < 1 for v in values):
                raise ValueError(f"{self.sweep_axis} sweep values must be >= 1")
            if self.sweep_axis == "k" and any(v > self.spec.k for v in values):
                raise ValueError(
                    f"k sweep values must not exceed the reference dimension {self.spec.k}"
                )
        else:
            values = tuple(float(v) for v in values)
            if any(v < 0 for v in values):
                raise ValueError("epsilon sweep values must be >= 0")
        if list(values) != sorted(values):
            raise ValueError("sweep_values must be sorted ascending")
        object.__setattr__(self, "sweep_values", values)
        if not isinstance(self.trials, (int, np.integer)) or self.trials < 1:
            raise ValueError(f"trials must be a positive integer, got {self.trials!r}")
        distances = tuple(self.distances)
        if not distances:
            raise ValueError("at least one distance is required")
        object.__setattr__(self, "distances", distances)
        if self.sweep_axis != "n":
            if self.n is None or int(self.n) < 1:
                raise ValueError("a fixed positive n is required unless sweeping n")
            object.__setattr__(self, "n", int(self.n))
        elif self.n is not None:
            raise ValueError("fixed n must be omitted when sweeping n")
        if int(self.root_seed) < 0:
            raise ValueError("root_seed must be nonnegative")
        object.__setattr__(self, "root_seed", int(self.root_seed))
        # materialize every sweep point once so invalid combinations
        # (epsilon out of the model's range, impossible rebinning) fail now
        for i in range(len(values)):
            _spec_and_n_at(self, i)

    def to_json_obj(self) -> dict:
        obj: dict = {
            "spec": self.spec.to_json_obj(),
            "sweep": {
                "axis": self.sweep_axis,
                "values": [
                    int(v) if self.sweep_axis in ("n", "k") else float(v)
                    for v in self.sweep_values
                ],
            },
            "trials": int(self.trials),
            "distances": [d.label for d in self.distances],
            "root_seed": int(self.root_seed),
        }
        if self.n is not None:
            obj["n"] = int(self.n)
        return obj

    @classmethod
    def from_json_obj(cls, obj: dict) -> "ExperimentPlan":
        sweep = obj["sweep"]
        return cls(
            spec=ContaminationSpec.from_json_obj(obj["spec"]),
            sweep_axis=sweep["axis"],
            sweep_values=tuple(sweep["values"]),
            trials=int(obj.get("trials", DEFAULT_TRIALS)),
            distances=tuple(parse_distance(d) for d in obj["distances"]),
            root_seed=int(obj["root_seed"]),
            n=int(obj["n"]) if obj.get("n") is not None else None,
        )

    def digest(self) -> str:
        return hashlib.sha256(serialize.dumps(self.to_json_obj()).encode()).hexdigest()


@dataclass(frozen=True)
class ResultRow:
    sweep_axis: str
    sweep_value: int | float
    distance: DistanceKind
    mean_error: float
    q05: float
    q95: float
    trials: int
    mc_stderr: float


@dataclass(frozen=True)
class ExperimentResult:
    rows: tuple[ResultRow, ...]
    plan_digest: str


def mc_stderr(errors: np.ndarray) -> float:
    """Sample standard deviation over sqrt(trials); zero for a single trial."""
    if errors.shape[0] < 2:
        return 0.0
    return float(errors.std(ddof=1) / math.sqrt(errors.shape[0]))


def nearest_rank(sorted_values: np.ndarray, p: float) -> float:
    """Nearest-rank percentile of ascending ``sorted_values``."""
    count = sorted_values.shape[0]
    rank = max(1, math.ceil(p * count))
    return float(sorted_values[rank - 1])


def _spec_and_n_at(plan: ExperimentPlan, i: int) -> tuple[ContaminationSpec, int]:
    value = plan.sweep_values[i]
    if plan.sweep_axis == "n":
        return plan.spec, int(value)
    if plan.sweep_axis == "epsilon":
        return replace(plan.spec, epsilon=float(value)), plan.n
    return rebin_spec(plan.spec, int(value)), plan.n


def _trial_errors(
    spec: ContaminationSpec, n: int, kinds: tuple[DistanceKind, ...], seed: int
) -> np.ndarray:
    mean, _ = mean_and_outliers(spec, n, seed)
    ref = spec.reference.entries
    return np.array([distance_arrays(mean, ref, kind) for kind in kinds])


def run_experiment(plan: ExperimentPlan, threads: int | None = None) -> ExperimentResult:
    """Execute the plan; deterministic for any ``threads`` value.

    ``threads=None`` uses the available core count. Trials are independent;
    the per-trial seeds and the index-ordered aggregation make the output
    independent of scheduling.
    """
    if threads is None:
        threads = os.cpu_count() or 1
    if threads < 1:
        raise ValueError(f"threads must be >= 1, got {threads}")
    kinds = plan.distances
    n_sweep, n_trials = len(plan.sweep_values), plan.trials
    errors = np.empty((n_sweep, n_trials, len(kinds)))
    points = [_spec_and_n_at(plan, i) for i in range(n_sweep)]

    def run_one(task: tuple[int, int]) -> None:
        i, t = task
        spec_i, n_i = points[i]
        errors[i, t] = _trial_errors(spec_i, n_i, kinds, derive_seed(plan.root_seed, i, t))

    tasks = [(i, t) for i in range(n_sweep) for t in range(n_trials)]
    if threads == 1:
        for task in tasks:
            run_one(task)
    else:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            list(pool.map(run_one, tasks))

    rows = []
    for i in range(n_sweep):
        for j, kind in enumerate(kinds):
            errs = np.sort(errors[i, :, j])
            rows.append(
                ResultRow(
                    sweep_axis=plan.sweep_axis,
                    sweep_value=plan.sweep_values[i],
                    distance=kind,
                    mean_error=float(errors[i, :, j].mean()),
                    q05=nearest_rank(errs, 0.05),
                    q95=nearest_rank(errs, 0.95),
                    trials=n_trials,
                    mc_stderr=mc_stderr(errors[i, :, j]),
                )
            )
    return ExperimentResult(rows=tuple(rows), plan_digest=plan.digest())


# ---------------------------------------------------------------------------
# Rate fitting
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class FitReport:
    slope: float
    intercept: float
    r2: float
    points: int


def fit_rate(result: ExperimentResult, kind: DistanceKind, axis: str) -> FitReport:
    """Least-squares slope of log(mean_error) against log(sweep_value).

    Requires at least three sweep points for the requested distance and axis,
    all with strictly positive mean error.
    """
    if axis not in ("n", "epsilon"):
        raise ValueError(f"fit axis must be 'n' or 'epsilon', got {axis!r}")
    rows = [r for r in result.rows if r.distance == kind and r.sweep_axis == axis]
    if len(rows) < 3:
        raise InsufficientPoints(
            f"need >= 3 sweep points for {kind.label} over {axis}, found {len(rows)}"
        )
    x = np.array([float(r.sweep_value) for r in rows])
    y = np.array([r.mean_error for r in rows])
    if np.any(y <= 0):
        raise NonpositiveError("log-log fit requires strictly positive mean errors")
    if np.any(x <= 0):
        raise NonpositiveError("log-log fit requires strictly positive sweep values")
    logx, logy = np.log(x), np.log(y)
    slope, intercept = np.polyfit(logx, logy, 1)
    fitted = slope * logx + intercept
    ss_res = float(((logy - fitted) ** 2).sum())
    ss_tot = float(((logy - logy.mean()) ** 2).sum())
    r2 = 1.0 if ss_tot == 0.0 else 1.0 - ss_res / ss_tot
    return FitReport(slope=float(slope), intercept=float(intercept), r2=r2, points=len(rows))


# ---------------------------------------------------------------------------
# Coverage
# ---------------------------------------------------------------------------


def empirical_coverage(
    spec: ContaminationSpec,
    confidence: ConfidenceSpec,
    kind: DistanceKind,
    trials: int,
    root_seed: int,
) -> float:
    """Fraction of trials whose confidence ball contains the reference vector.

    Sample size comes from ``confidence.n``; trial ``t`` uses the seed
    ``derive_seed(root_seed, 0, t)``.
    """
    if trials < 100:
        raise ValueError(f"need at least 100 trials, got {trials}")
    hits = 0
    for t in range(trials):
        mean, _ = mean_and_outliers(spec, confidence.n, derive_seed(root_seed, 0, t))
        if region_contains(ProbVector(mean), spec.reference, confidence, kind):
            hits += 1
    return hits / trials


# ---------------------------------------------------------------------------
# CSV / JSON renderings
# ---------------------------------------------------------------------------


def result_to_csv(result: ExperimentResult) -> str:
    lines = [CSV_HEADER]
    for r in result.rows:
        lines.append(
            serialize.csv_line(
                [
                    r.sweep_axis,
                    r.sweep_value,
                    r.distance.label,
                    r.mean_error,
                    r.q05,
                    r.q95,
                    r.trials,
                    r.mc_stderr,
                ]
            )
        )
    return "\n".join(lines) + "\n"


def result_to_json_obj(result: ExperimentResult) -> dict:
    return {
        "plan_digest": result.plan_digest,
        "rows": [
            {
                "sweep_axis": r.sweep_axis,
                "sweep_value": r.sweep_value,
                "distance": r.distance.label,
                "mean_error": r.mean_error,
                "q05": r.q05,
                "q95": r.q95,
                "trials": r.trials,
                "mc_stderr": r.mc_stderr,
            }
            for r in result.rows
        ],
    }


def result_from_csv(text: str) -> ExperimentResult:
    """Parse the CSV schema back into a result (digest is left empty)."""
    lines = [line for line in text.splitlines() if line.strip()]
    if not lines or lines[0] != CSV_HEADER:
        raise ValueError(f"expected header {CSV_HEADER!r}")
    rows = []
    for line in lines[1:]:
        fields = line.split(",")
        if len(fields) != 8:
            raise ValueError(f"expected 8 CSV fields, got {len(fields)}: {line!r}")
        axis = fields[0]
        value = int(fields[1]) if axis in ("n", "k") else float(fields[1])
        rows.append(
            ResultRow(
                sweep_axis=axis,
                sweep_value=value,
                distance=parse_distance(fields[2]),
                mean_error=float(fields[3]),
                q05=float(fields[4]),
                q95=float(fields[5]),
                trials=int(fields[6]),
                mc_stderr=float(fields[7]),
            )
        )
    return ExperimentResult(rows=tuple(rows), plan_digest="")
