"""Contaminated-sample generators.

Five mechanisms share one engine. Writing ``o = floor(n * epsilon)`` for the
outlier budget:

* ``hc``  -- every position is independently an outlier with probability
  epsilon; outliers are iid draws from the contaminant law Q. The outlier
  count is Binomial(n, epsilon).
* ``hdc`` -- exactly ``o`` outlier positions, chosen uniformly at random;
  outliers iid from Q.
* ``oc``  -- ``o`` positions chosen uniformly at random before any data are
  drawn; the outlier block comes from a named block descriptor and may be
  non-iid, but is independent of the inliers.
* ``pc``  -- ``o`` positions chosen uniformly at random; outlier ``i`` is an
  independent categorical draw with its own parameter vector from the spec
  payload.
* ``ac``  -- a clean iid sample is drawn first; an adversary strategy then
  rewrites at most ``o`` positions. The budget is enforced by the engine,
  never trusted to the strategy.

Seed discipline
---------------
A generator seed is split into three sub-streams via
``numpy.random.SeedSequence((seed, purpose))`` with purposes

* 0 -- inlier draws (always ``n`` draws, regardless of epsilon),
* 1 -- outlier-set / outlier-flag choice,
* 2 -- outlier value draws,

so changing epsilon or the contaminant never reshuffles the inliers, and
samples are bit-identical across runs and thread counts. Derived seeds for
trial loops come from :func:`derive_seed`, which hashes ``(root, *path)``
through the same SeedSequence mechanism.

By default all observations are categorical point masses (basis vectors).
Setting ``dirichlet_alpha`` on the spec draws the *inliers* from a Dirichlet
law with concentration ``alpha * k * reference`` restricted to the support
of the reference (its mean is the reference vector), which exercises the
estimator on general simplex-valued data.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from .errors import (
    BudgetViolation,
    DimensionMismatch,
    EpsilonOutOfRange,
)
from .simplex import (
    DistanceKind,
    ProbVector,
    Sample,
    distance_arrays,
    parse_distance,
    rebin,
    rebin_index,
)

MODELS = ("hc", "hdc", "oc", "pc", "ac")

STREAM_INLIER = 0
STREAM_SET = 1
STREAM_OUTLIER = 2

BLOCK_DESCRIPTORS = ("iid", "repeat_draw", "point_mass_block")
STRATEGIES = ("replace_point_mass", "extreme_swap", "greedy_worst_case")


def _stream(seed: int, purpose: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence((int(seed), int(purpose))))


def derive_seed(root_seed: int, *path: int) -> int:
    """Stable 64-bit seed for a sub-task, e.g. ``(sweep_index, trial)``."""
    ss = np.random.SeedSequence((int(root_seed), *[int(p) for p in path]))
    return int(ss.generate_state(1, np.uint64)[0])


def outlier_budget(n: int, epsilon: float) -> int:
    """``floor(n * epsilon)`` with a 1e-9 guard against roundoff at integers."""
    return int(math.floor(n * epsilon + 1e-9))


def _categorical(gen: np.random.Generator, p: np.ndarray, size: int) -> np.ndarray:
    """``size`` iid category indices with probabilities ``p``.

    Inverse-CDF sampling is pinned here (rather than relying on
    ``Generator.choice``) so the draw sequence is an explicit part of the
    package's reproducibility contract.
    """
    cdf = np.cumsum(p)
    cdf /= cdf[-1]
    u = gen.random(size)
    return np.searchsorted(cdf, u, side="right").astype(np.int64)


def _one_hot(idx: np.ndarray, k: int) -> np.ndarray:
    rows = np.zeros((idx.shape[0], k))
    rows[np.arange(idx.shape[0]), idx] = 1.0
    return rows


# ---------------------------------------------------------------------------
# Spec types
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class BlockDescriptor:
    """Named generator for an oblivious-contamination outlier block.

    * ``iid``              -- block iid from categorical ``q``
    * ``repeat_draw``      -- one draw from ``q`` repeated across the block
      (exchangeable but not independent)
    * ``point_mass_block`` -- every outlier equals basis vector ``index``
    """

    name: str
    q: ProbVector | None = None
    index: int | None = None

    def __post_init__(self):
        if self.name not in BLOCK_DESCRIPTORS:
            raise ValueError(
                f"unknown block descriptor {self.name!r}; expected {BLOCK_DESCRIPTORS}"
            )
        if self.name in ("iid", "repeat_draw") and self.q is None:
            raise ValueError(f"descriptor {self.name!r} requires a law q")
        if self.name == "point_mass_block" and self.index is None:
            raise ValueError("descriptor 'point_mass_block' requires an index")

    def to_json_obj(self) -> dict:
        obj: dict = {"name": self.name}
        if self.q is not None:
            obj["q"] = self.q.to_json_obj()
        if self.index is not None:
            obj["index"] = int(self.index)
        return obj

    @classmethod
    def from_json_obj(cls, obj: dict) -> "BlockDescriptor":
        q = ProbVector.from_json_obj(obj["q"]) if "q" in obj else None
        index = int(obj["index"]) if "index" in obj else None
        return cls(name=obj["name"], q=q, index=index)


@dataclass(frozen=True)
class AdversaryStrategy:
    """Deterministic rewrite rule applied to the clean sample.

    * ``replace_point_mass`` -- rewrite the first budget-many positions whose
      value differs from basis vector ``j`` to ``e_j``.
    * ``extreme_swap``       -- rewrite occurrences of ``e_i`` to ``e_j``
      (scan order, up to the budget).
    * ``greedy_worst_case``  -- exhaustively try every target ``j`` under the
      replace rule and keep the one maximizing ``kind``-distance between the
      corrupted sample mean and the reference vector (ties: smallest ``j``).
    """

    name: str
    j: int | None = None
    i: int | None = None
    kind: DistanceKind | None = None

    def __post_init__(self):
        if self.name not in STRATEGIES:
            raise ValueError(
                f"unknown adversary strategy {self.name!r}; expected {STRATEGIES}"
            )
        if self.name == "replace_point_mass" and self.j is None:
            raise ValueError("replace_point_mass requires a target index j")
        if self.name == "extreme_swap" and (self.i is None or self.j is None):
            raise ValueError("extreme_swap requires source i and target j")
        if self.name == "greedy_worst_case" and self.kind is None:
            raise ValueError("greedy_worst_case requires a distance kind")

    def to_json_obj(self) -> dict:
        obj: dict = {"name": self.name}
        if self.j is not None:
            obj["j"] = int(self.j)
        if self.i is not None:
            obj["i"] = int(self.i)
        if self.kind is not None:
            obj["kind"] = self.kind.label
        return obj

    @classmethod
    def from_json_obj(cls, obj: dict) -> "AdversaryStrategy":
        kind = parse_distance(obj["kind"]) if "kind" in obj else None
        return cls(
            name=obj["name"],
            j=int(obj["j"]) if "j" in obj else None,
            i=int(obj["i"]) if "i" in obj else None,
            kind=kind,
        )


Contaminant = ProbVector | BlockDescriptor | tuple | list | AdversaryStrategy


@dataclass(frozen=True)
class ContaminationSpec:
    """One contamination mechanism with its parameters.

    ``epsilon`` must lie in [0, 1/2) for ``hc`` (the mixture reading needs a
    minority of outliers); the deterministic-budget models accept the full
    range [0, 1], which the risk-comparison operation relies on.
    """

    model: str
    epsilon: float
    reference: ProbVector
    contaminant: Contaminant
    dirichlet_alpha: float | None = None

    def __post_init__(self):
        if self.model not in MODELS:
            raise ValueError(f"unknown model {self.model!r}; expected one of {MODELS}")
        eps = float(self.epsilon)
        object.__setattr__(self, "epsilon", eps)
        if self.model == "hc":
            if not 0.0 <= eps < 0.5:
                raise EpsilonOutOfRange(f"epsilon={eps} outside [0, 0.5) for model 'hc'")
        elif not 0.0 <= eps <= 1.0:
            raise EpsilonOutOfRange(f"epsilon={eps} outside [0, 1]")
        k = self.reference.k
        c = self.contaminant
        if self.model in ("hc", "hdc"):
            if not isinstance(c, ProbVector):
                raise ValueError(f"model {self.model!r} needs a ProbVector contaminant")
            if c.k != k:
                raise DimensionMismatch(f"contaminant has k={c.k}, reference k={k}")
        elif self.model == "oc":
            if not isinstance(c, BlockDescriptor):
                raise ValueError("model 'oc' needs a BlockDescriptor contaminant")
            if c.q is not None and c.q.k != k:
                raise DimensionMismatch(f"descriptor law has k={c.q.k}, reference k={k}")
            if c.index is not None and not 0 <= c.index < k:
                raise ValueError(f"descriptor index {c.index} outside [0, {k})")
        elif self.model == "pc":
            if not isinstance(c, (tuple, list)):
                raise ValueError("model 'pc' needs a sequence of ProbVector payloads")
            payload = tuple(c)
            for i, th in enumerate(payload):
                if not isinstance(th, ProbVector):
                    raise ValueError(f"pc payload {i} is not a ProbVector")
                if th.k != k:
                    raise DimensionMismatch(f"pc payload {i} has k={th.k}, reference k={k}")
            object.__setattr__(self, "contaminant", payload)
        else:  # ac
            if not isinstance(c, AdversaryStrategy):
                raise ValueError("model 'ac' needs an AdversaryStrategy contaminant")
            for label, idx in (("j", c.j), ("i", c.i)):
                if idx is not None and not 0 <= idx < k:
                    raise ValueError(f"strategy index {label}={idx} outside [0, {k})")
        if self.dirichlet_alpha is not None and not self.dirichlet_alpha > 0:
            raise ValueError(f"dirichlet_alpha must be > 0, got {self.dirichlet_alpha}")

    @property
    def k(self) -> int:
        return self.reference.k

    def to_json_obj(self) -> dict:
        obj: dict = {
            "model": self.model,
            "epsilon": float(self.epsilon),
            "reference": self.reference.to_json_obj(),
        }
        c = self.contaminant
        if isinstance(c, ProbVector):
            obj["contaminant"] = c.to_json_obj()
        elif isinstance(c, BlockDescriptor):
            obj["contaminant"] = c.to_json_obj()
        elif isinstance(c, AdversaryStrategy):
            obj["contaminant"] = c.to_json_obj()
        else:
            obj["contaminant"] = [th.to_json_obj() for th in c]
        if self.dirichlet_alpha is not None:
            obj["dirichlet_alpha"] = float(self.dirichlet_alpha)
        return obj

    @classmethod
    def from_json_obj(cls, obj: dict) -> "ContaminationSpec":
        model = obj["model"]
        reference = ProbVector.from_json_obj(obj["reference"])
        raw = obj["contaminant"]
        contaminant: Contaminant
        if model in ("hc", "hdc"):
            contaminant = ProbVector.from_json_obj(raw)
        elif model == "oc":
            contaminant = BlockDescriptor.from_json_obj(raw)
        elif model == "pc":
            contaminant = tuple(ProbVector.from_json_obj(t) for t in raw)
        elif model == "ac":
            contaminant = AdversaryStrategy.from_json_obj(raw)
        else:
            raise ValueError(f"unknown model {model!r}; expected one of {MODELS}")
        return cls(
            model=model,
            epsilon=float(obj["epsilon"]),
            reference=reference,
            contaminant=contaminant,
            dirichlet_alpha=(
                float(obj["dirichlet_alpha"]) if obj.get("dirichlet_alpha") is not None else None
            ),
        )


def rebin_spec(spec: ContaminationSpec, new_k: int) -> ContaminationSpec:
    """Rebin the reference and contaminant payloads to dimension ``new_k``.

    Point-mass indices in descriptors and strategies map to the group that
    contains them, consistent with :func:`robustsimplex.simplex.rebin`.
    """
    k = spec.k
    remap = lambda j: rebin_index(j, k, new_k)  # noqa: E731
    c = spec.contaminant
    new_c: Contaminant
    if isinstance(c, ProbVector):
        new_c = rebin(c, new_k)
    elif isinstance(c, BlockDescriptor):
        new_c = BlockDescriptor(
            name=c.name,
            q=rebin(c.q, new_k) if c.q is not None else None,
            index=remap(c.index) if c.index is not None else None,
        )
    elif isinstance(c, AdversaryStrategy):
        new_c = AdversaryStrategy(
            name=c.name,
            j=remap(c.j) if c.j is not None else None,
            i=remap(c.i) if c.i is not None else None,
            kind=c.kind,
        )
    else:
        new_c = tuple(rebin(th, new_k) for th in c)
    return replace(spec, reference=rebin(spec.reference, new_k), contaminant=new_c)


# ---------------------------------------------------------------------------
# Index-level engine (categorical point-mass observations)
# ---------------------------------------------------------------------------


def _replace_candidates(idx: np.ndarray, target: int, budget: int) -> np.ndarray:
    """First ``budget`` positions whose value differs from ``target``."""
    return np.flatnonzero(idx != target)[:budget]


def _greedy_target(
    idx: np.ndarray, budget: int, reference: np.ndarray, kind: DistanceKind
) -> tuple[int, np.ndarray]:
    k = reference.shape[0]
    n = idx.shape[0]
    counts = np.bincount(idx, minlength=k).astype(np.float64)
    best_j, best_cand, best_dist = 0, np.empty(0, dtype=np.intp), -1.0
    for j in range(k):
        cand = _replace_candidates(idx, j, budget)
        corrupted = counts - np.bincount(idx[cand], minlength=k)
        corrupted[j] += cand.shape[0]
        d = distance_arrays(corrupted / n, reference, kind)
        if d > best_dist:
            best_j, best_cand, best_dist = j, cand, d
    return best_j, best_cand


def _apply_strategy_indices(
    strategy: AdversaryStrategy,
    clean: np.ndarray,
    budget: int,
    reference: np.ndarray,
) -> np.ndarray:
    idx = clean.copy()
    if budget == 0:
        return idx
    if strategy.name == "replace_point_mass":
        cand = _replace_candidates(idx, strategy.j, budget)
        idx[cand] = strategy.j
    elif strategy.name == "extreme_swap":
        cand = np.flatnonzero(idx == strategy.i)[:budget]
        idx[cand] = strategy.j
    else:  # greedy_worst_case
        j, cand = _greedy_target(idx, budget, reference, strategy.kind)
        idx[cand] = j
    return idx


def _enforce_budget(clean: np.ndarray, modified: np.ndarray, budget: int) -> np.ndarray:
    if modified.shape != clean.shape:
        raise BudgetViolation(
            f"adversary changed the sample size: {clean.shape[0]} -> {modified.shape[0]}"
        )
    changed = np.flatnonzero(modified != clean)
    if changed.shape[0] > budget:
        raise BudgetViolation(
            f"adversary changed {changed.shape[0]} positions, budget is {budget}"
        )
    return changed


def _apply_custom_adversary(
    reference: ProbVector, n: int, seed: int, strategy_fn, budget: int
) -> tuple[np.ndarray, np.ndarray]:
    """Internal extension point: run the adversarial pipeline with an
    arbitrary rewrite function ``strategy_fn(clean_idx, gen_set, gen_out)``.

    The engine still enforces the rewrite budget. Used by tests to realize
    other mechanisms as adversaries.
    """
    gen_in = _stream(seed, STREAM_INLIER)
    clean = _categorical(gen_in, reference.entries, n)
    modified = strategy_fn(
        clean.copy(), _stream(seed, STREAM_SET), _stream(seed, STREAM_OUTLIER)
    )
    modified = np.asarray(modified, dtype=np.int64)
    changed = _enforce_budget(clean, modified, budget)
    return modified, changed


def sample_indices(spec: ContaminationSpec, n: int, seed: int) -> tuple[np.ndarray, np.ndarray]:
    """Draw a contaminated sample as category indices.

    Returns ``(idx, outliers)`` where ``idx[i]`` is the category of
    observation ``i`` and ``outliers`` is the sorted array of positions
    produced by the contamination mechanism (for ``ac``: positions where the
    adversary actually changed the value). Only valid when all observations
    are point masses, i.e. ``spec.dirichlet_alpha is None``.
    """
    if spec.dirichlet_alpha is not None:
        raise ValueError("index sampling requires point-mass observations")
    _check_n_seed(n, seed)
    gen_in = _stream(seed, STREAM_INLIER)
    idx = _categorical(gen_in, spec.reference.entries, n)
    o = outlier_budget(n, spec.epsilon)

    if spec.model == "hc":
        gen_set = _stream(seed, STREAM_SET)
        outs = np.flatnonzero(gen_set.random(n) < spec.epsilon)
        if outs.size:
            gen_out = _stream(seed, STREAM_OUTLIER)
            idx[outs] = _categorical(gen_out, spec.contaminant.entries, outs.size)
        return idx, outs.astype(np.int64)

    if spec.model in ("hdc", "oc", "pc"):
        gen_set = _stream(seed, STREAM_SET)
        outs = np.sort(gen_set.choice(n, size=o, replace=False)).astype(np.int64)
        if o:
            gen_out = _stream(seed, STREAM_OUTLIER)
            idx[outs] = _outlier_block_indices(spec, o, gen_out)
        return idx, outs

    # ac
    clean = idx
    modified = _apply_strategy_indices(spec.contaminant, clean, o, spec.reference.entries)
    changed = _enforce_budget(clean, modified, o)
    return modified, changed.astype(np.int64)


def _outlier_block_indices(
    spec: ContaminationSpec, o: int, gen_out: np.random.Generator
) -> np.ndarray:
    """Category indices of the ``o`` outliers, in ascending position order."""
    if spec.model == "hdc":
        return _categorical(gen_out, spec.contaminant.entries, o)
    if spec.model == "oc":
        desc = spec.contaminant
        if desc.name == "iid":
            return _categorical(gen_out, desc.q.entries, o)
        if desc.name == "repeat_draw":
            one = _categorical(gen_out, desc.q.entries, 1)[0]
            return np.full(o, one, dtype=np.int64)
        return np.full(o, desc.index, dtype=np.int64)
    # pc: one categorical parameter per outlier
    payload = spec.contaminant
    if len(payload) != o:
        raise DimensionMismatch(
            f"pc payload has {len(payload)} parameter vectors, outlier budget is {o}"
        )
    return np.array(
        [_categorical(gen_out, th.entries, 1)[0] for th in payload], dtype=np.int64
    )


# ---------------------------------------------------------------------------
# Matrix-level engine (general simplex-valued inliers)
# ---------------------------------------------------------------------------


def _dirichlet_inliers(spec: ContaminationSpec, n: int, gen_in: np.random.Generator) -> np.ndarray:
    ref = spec.reference.entries
    k = ref.shape[0]
    support = np.flatnonzero(ref > 0.0)
    concentration = spec.dirichlet_alpha * k * ref[support]
    rows = np.zeros((n, k))
    rows[:, support] = gen_in.dirichlet(concentration, size=n)
    return rows


def _rows_equal_basis(X: np.ndarray, j: int) -> np.ndarray:
    # a simplex row equals e_j exactly when its j-th entry is 1
    return X[:, j] == 1.0


def _apply_strategy_matrix(
    strategy: AdversaryStrategy, clean: np.ndarray, budget: int, reference: np.ndarray
) -> np.ndarray:
    X = clean.copy()
    if budget == 0:
        return X
    n, k = X.shape

    def set_rows(rows: np.ndarray, j: int) -> None:
        X[rows] = 0.0
        X[rows, j] = 1.0

    if strategy.name == "replace_point_mass":
        cand = np.flatnonzero(~_rows_equal_basis(X, strategy.j))[:budget]
        set_rows(cand, strategy.j)
    elif strategy.name == "extreme_swap":
        cand = np.flatnonzero(_rows_equal_basis(X, strategy.i))[:budget]
        set_rows(cand, strategy.j)
    else:
        colsum = X.sum(axis=0)
        best_j, best_cand, best_dist = 0, np.empty(0, dtype=np.intp), -1.0
        for j in range(k):
            cand = np.flatnonzero(~_rows_equal_basis(X, j))[:budget]
            corrupted = colsum - X[cand].sum(axis=0)
            corrupted[j] += cand.shape[0]
            d = distance_arrays(corrupted / n, reference, strategy.kind)
            if d > best_dist:
                best_j, best_cand, best_dist = j, cand, d
        set_rows(best_cand, best_j)
    return X


def sample_matrix(spec: ContaminationSpec, n: int, seed: int) -> tuple[np.ndarray, np.ndarray]:
    """Draw a contaminated sample as an (n, k) row matrix.

    Falls back to the index engine (and one-hot rows) unless the spec asks
    for Dirichlet-distributed inliers.
    """
    if spec.dirichlet_alpha is None:
        idx, outs = sample_indices(spec, n, seed)
        return _one_hot(idx, spec.k), outs
    _check_n_seed(n, seed)
    k = spec.k
    gen_in = _stream(seed, STREAM_INLIER)
    X = _dirichlet_inliers(spec, n, gen_in)
    o = outlier_budget(n, spec.epsilon)

    if spec.model == "hc":
        gen_set = _stream(seed, STREAM_SET)
        outs = np.flatnonzero(gen_set.random(n) < spec.epsilon)
        if outs.size:
            gen_out = _stream(seed, STREAM_OUTLIER)
            vals = _categorical(gen_out, spec.contaminant.entries, outs.size)
            X[outs] = _one_hot(vals, k)
        return X, outs.astype(np.int64)

    if spec.model in ("hdc", "oc", "pc"):
        gen_set = _stream(seed, STREAM_SET)
        outs = np.sort(gen_set.choice(n, size=o, replace=False)).astype(np.int64)
        if o:
            gen_out = _stream(seed, STREAM_OUTLIER)
            vals = _outlier_block_indices(spec, o, gen_out)
            X[outs] = _one_hot(vals, k)
        return X, outs

    clean = X
    modified = _apply_strategy_matrix(spec.contaminant, clean, o, spec.reference.entries)
    changed_rows = np.flatnonzero((modified != clean).any(axis=1))
    if changed_rows.shape[0] > o:
        raise BudgetViolation(
            f"adversary changed {changed_rows.shape[0]} positions, budget is {o}"
        )
    return modified, changed_rows.astype(np.int64)


# ---------------------------------------------------------------------------
# Public generation API
# ---------------------------------------------------------------------------


def _check_n_seed(n: int, seed: int) -> None:
    if not isinstance(n, (int, np.integer)) or isinstance(n, bool) or n < 1:
        raise ValueError(f"n must be a positive integer, got {n!r}")
    if not isinstance(seed, (int, np.integer)) or isinstance(seed, bool) or seed < 0:
        raise ValueError(f"seed must be a nonnegative integer, got {seed!r}")


def generate(spec: ContaminationSpec, n: int, seed: int) -> Sample:
    """Draw ``n`` observations under the spec's mechanism, deterministically.

    The returned sample records the realized outlier positions and the seed.
    """
    X, outliers = sample_matrix(spec, n, seed)
    observations = tuple(ProbVector(row) for row in X)
    return Sample(
        observations=observations,
        outlier_indices=tuple(int(i) for i in outliers),
        seed_record=int(seed),
    )


def mean_and_outliers(spec: ContaminationSpec, n: int, seed: int) -> tuple[np.ndarray, np.ndarray]:
    """Sample mean of ``generate(spec, n, seed)`` without materializing it.

    For point-mass observations the mean is the category-count vector over
    ``n``, which is bitwise identical to averaging the one-hot rows.
    """
    if spec.dirichlet_alpha is None:
        idx, outs = sample_indices(spec, n, seed)
        counts = np.bincount(idx, minlength=spec.k).astype(np.float64)
        return counts / n, outs
    X, outs = sample_matrix(spec, n, seed)
    return X.mean(axis=0), outs


# ---------------------------------------------------------------------------
# Risk comparison between the hc and hdc mechanisms
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class RiskComparison:
    """Monte Carlo estimates of both sides of the hc-vs-hdc risk inequality.

    ``slack = (hdc_risk_2eps + tail_weight * hdc_risk_full) - hc_risk``:
    nonnegative up to Monte Carlo noise. ``tail_weight`` is
    ``exp(-n * epsilon / 3)`` and ``hdc_risk_full`` is the estimated risk
    with every observation an outlier.
    """

    hc_risk: float
    hdc_risk_2eps: float
    hdc_risk_full: float
    tail_weight: float
    slack: float
    hc_stderr: float
    hdc_2eps_stderr: float
    hdc_full_stderr: float
    trials: int


def _mc_stderr(errors: np.ndarray) -> float:
    if errors.shape[0] < 2:
        return 0.0
    return float(errors.std(ddof=1) / math.sqrt(errors.shape[0]))


def hc_vs_hdc_risk_check(
    reference: ProbVector,
    contaminant: ProbVector,
    epsilon: float,
    n: int,
    trials: int,
    kind: DistanceKind,
    seed: int,
) -> RiskComparison:
    """Estimate sample-mean risk under hc(eps), hdc(2*eps) and hdc(1).

    All three estimates use common per-trial seeds, so at epsilon = 0 the hc
    and hdc estimates coincide exactly. Requires ``2 * epsilon < 1`` and at
    least 100 trials.
    """
    if not 0.0 <= 2.0 * epsilon < 1.0:
        raise EpsilonOutOfRange(f"need 0 <= 2*epsilon < 1, got epsilon={epsilon}")
    if trials < 100:
        raise ValueError(f"need at least 100 trials, got {trials}")
    specs = {
        "hc": ContaminationSpec("hc", epsilon, reference, contaminant),
        "hdc2": ContaminationSpec("hdc", 2.0 * epsilon, reference, contaminant),
        "full": ContaminationSpec("hdc", 1.0, reference, contaminant),
    }
    ref = reference.entries
    errors = {name: np.empty(trials) for name in specs}
    for t in range(trials):
        seed_t = derive_seed(seed, t)
        for name, sp in specs.items():
            mean, _ = mean_and_outliers(sp, n, seed_t)
            errors[name][t] = distance_arrays(mean, ref, kind)
    hc_risk = float(errors["hc"].mean())
    hdc2_risk = float(errors["hdc2"].mean())
    full_risk = float(errors["full"].mean())
    tail = math.exp(-n * epsilon / 3.0)
    return RiskComparison(
        hc_risk=hc_risk,
        hdc_risk_2eps=hdc2_risk,
        hdc_risk_full=full_risk,
        tail_weight=tail,
        slack=hdc2_risk + tail * full_risk - hc_risk,
        hc_stderr=_mc_stderr(errors["hc"]),
        hdc_2eps_stderr=_mc_stderr(errors["hdc2"]),
        hdc_full_stderr=_mc_stderr(errors["full"]),
        trials=trials,
    )
