"""Simplex vectors, distances between them, and the sample-mean estimator.

The central type is :class:`ProbVector`, a point of the probability simplex
in R^k (nonnegative entries summing to one). A ProbVector doubles as the
categorical law putting mass ``entries[j]`` on the basis vector e_{j+1};
the Wasserstein distance below is defined under that interpretation, with
ground cost ``||e_i - e_j||_2^q``.

Implemented distances between vectors ``a`` and ``b``:

* total variation    ``0.5 * sum_j |a_j - b_j|``            (range [0, 1])
* Hellinger          ``||sqrt(a) - sqrt(b)||_2``            (range [0, sqrt(2)])
* L2                 ``||a - b||_2``                        (range [0, sqrt(2)])
* L-infinity         ``max_j |a_j - b_j|``
* Wasserstein-q      ``(2**(q/2) * tv(a, b)) ** (1/q)``, the closed form of
  the minimum-cost coupling between two categorical laws on the canonical
  basis, where every distinct pair of support points is at L2 distance
  sqrt(2).
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass

import numpy as np

from .errors import (
    BadTargetDimension,
    DimensionMismatch,
    EmptySample,
    NegativeEntry,
    SumOutOfTolerance,
    UnsupportedDistance,
    ZeroSum,
)

#: Absolute tolerance on |sum(entries) - 1| accepted at construction.
SUM_TOLERANCE = 1e-9


def _as_float_vector(values) -> np.ndarray:
    arr = np.asarray(values, dtype=np.float64)
    if arr.ndim != 1 or arr.size == 0:
        raise ValueError("expected a nonempty one-dimensional array of reals")
    return arr


@dataclass(frozen=True, eq=False)
class ProbVector:
    """A point of the probability simplex in R^k.

    Construction validates the invariants (entries nonnegative, sum within
    ``SUM_TOLERANCE`` of one) and freezes the underlying array, so instances
    are immutable and safe to share across threads. Use
    :func:`make_prob_vector` when the input may need normalization.
    """

    entries: np.ndarray

    def __post_init__(self):
        arr = _as_float_vector(self.entries).copy()
        if np.any(arr < 0.0):
            j = int(np.argmin(arr))
            raise NegativeEntry(f"entry {j} is negative: {arr[j]}")
        total = float(arr.sum())
        if not abs(total - 1.0) <= SUM_TOLERANCE:
            raise SumOutOfTolerance(
                f"entries sum to {total!r}, outside 1 +/- {SUM_TOLERANCE}"
            )
        arr.flags.writeable = False
        object.__setattr__(self, "entries", arr)

    @property
    def k(self) -> int:
        """Dimension of the ambient space."""
        return int(self.entries.shape[0])

    def support(self) -> np.ndarray:
        """Indices of strictly positive entries."""
        return np.flatnonzero(self.entries > 0.0)

    @property
    def sparsity(self) -> int:
        """Number of strictly positive entries (derived, never stored)."""
        return int(self.support().size)

    def __eq__(self, other) -> bool:
        if not isinstance(other, ProbVector):
            return NotImplemented
        return np.array_equal(self.entries, other.entries)

    def __hash__(self) -> int:
        return hash((self.k, self.entries.tobytes()))

    def __repr__(self) -> str:
        vals = ", ".join(format(v, ".6g") for v in self.entries)
        return f"ProbVector([{vals}])"

    def to_json_obj(self) -> dict:
        return {"k": self.k, "entries": [float(v) for v in self.entries]}

    @classmethod
    def from_json_obj(cls, obj: dict, policy: str = "reject") -> "ProbVector":
        entries = obj["entries"]
        v = make_prob_vector(entries, policy=policy)
        if "k" in obj and int(obj["k"]) != v.k:
            raise DimensionMismatch(
                f"declared k={obj['k']} but {len(entries)} entries given"
            )
        return v


def make_prob_vector(raw, policy: str = "reject") -> ProbVector:
    """Build a ProbVector from raw reals.

    ``policy="reject"`` requires the input to already satisfy the simplex
    invariants. ``policy="normalize"`` divides nonnegative entries by their
    sum (rejecting a zero sum), which is the right mode for empirical
    frequencies subject to rounding.
    """
    arr = _as_float_vector(raw)
    if np.any(arr < 0.0):
        j = int(np.argmin(arr))
        raise NegativeEntry(f"entry {j} is negative: {arr[j]}")
    if policy == "reject":
        return ProbVector(arr)
    if policy == "normalize":
        total = float(arr.sum())
        if total <= 0.0:
            raise ZeroSum("cannot normalize: entries sum to zero")
        return ProbVector(arr / total)
    raise ValueError(f"unknown policy {policy!r}; use 'reject' or 'normalize'")


def basis_vector(index: int, k: int) -> ProbVector:
    """The point mass e_{index+1} in R^k (``index`` is 0-based)."""
    if not 0 <= index < k:
        raise ValueError(f"index {index} outside [0, {k})")
    arr = np.zeros(k)
    arr[index] = 1.0
    return ProbVector(arr)


# ---------------------------------------------------------------------------
# Distances
# ---------------------------------------------------------------------------

_TAGS = ("tv", "hellinger", "l2", "linf", "wasserstein")


@dataclass(frozen=True)
class DistanceKind:
    """Selector for one of the five implemented distances.

    ``q`` is meaningful only for the Wasserstein distance and must be >= 1.
    """

    tag: str
    q: float = 1.0

    def __post_init__(self):
        if self.tag not in _TAGS:
            raise UnsupportedDistance(
                f"unknown distance tag {self.tag!r}; expected one of {_TAGS}"
            )
        object.__setattr__(self, "q", float(self.q))
        if self.tag == "wasserstein" and not self.q >= 1.0:
            raise ValueError(f"wasserstein order q must be >= 1, got {self.q}")

    @property
    def label(self) -> str:
        """Stable string form, used in CSV output and CLI flags."""
        if self.tag == "wasserstein":
            return f"wasserstein(q={self.q:g})"
        return self.tag


TV = DistanceKind("tv")
HELLINGER = DistanceKind("hellinger")
L2 = DistanceKind("l2")
LINF = DistanceKind("linf")


def wasserstein(q: float) -> DistanceKind:
    return DistanceKind("wasserstein", q)


_WASSERSTEIN_RE = re.compile(r"^wasserstein\(q=([0-9.eE+-]+)\)$")


def parse_distance(text: str) -> DistanceKind:
    """Parse a distance label: ``tv``, ``hellinger``, ``l2``, ``linf``,
    ``wasserstein`` (q=1) or ``wasserstein(q=<real>)``."""
    s = text.strip().lower()
    if s in ("tv", "hellinger", "l2", "linf"):
        return DistanceKind(s)
    if s == "wasserstein":
        return DistanceKind("wasserstein", 1.0)
    m = _WASSERSTEIN_RE.match(s)
    if m:
        return DistanceKind("wasserstein", float(m.group(1)))
    raise UnsupportedDistance(f"cannot parse distance label {text!r}")


def tv_distance(a: np.ndarray, b: np.ndarray) -> float:
    return 0.5 * float(np.abs(a - b).sum())


def hellinger_distance(a: np.ndarray, b: np.ndarray) -> float:
    # assumes nonnegative inputs (guaranteed for ProbVector entries)
    return float(np.linalg.norm(np.sqrt(a) - np.sqrt(b)))


def l2_distance(a: np.ndarray, b: np.ndarray) -> float:
    return float(np.linalg.norm(a - b))


def linf_distance(a: np.ndarray, b: np.ndarray) -> float:
    return float(np.abs(a - b).max())


def wasserstein_distance(a: np.ndarray, b: np.ndarray, q: float) -> float:
    """W_q between the categorical laws a and b on the canonical basis.

    Minimum coupling cost with ground cost ``||e_i - e_j||_2^q`` equals
    ``2**(q/2) * tv(a, b)``; W_q is its q-th root.
    """
    return float((2.0 ** (q / 2.0) * tv_distance(a, b)) ** (1.0 / q))


def distance_arrays(a: np.ndarray, b: np.ndarray, kind: DistanceKind) -> float:
    """Distance between two validated entry arrays of equal dimension."""
    if a.shape != b.shape:
        raise DimensionMismatch(f"dimensions differ: {a.shape[0]} vs {b.shape[0]}")
    if kind.tag == "tv":
        return tv_distance(a, b)
    if kind.tag == "hellinger":
        return hellinger_distance(a, b)
    if kind.tag == "l2":
        return l2_distance(a, b)
    if kind.tag == "linf":
        return linf_distance(a, b)
    return wasserstein_distance(a, b, kind.q)


def distance(a: ProbVector, b: ProbVector, kind: DistanceKind) -> float:
    """Distance between two simplex points under the selected metric."""
    return distance_arrays(a.entries, b.entries, kind)


# ---------------------------------------------------------------------------
# Samples and the sample-mean estimator
# ---------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class Sample:
    """An ordered collection of simplex-valued observations.

    ``outlier_indices`` records which positions were produced by the
    contamination mechanism when the generator knows them; ``seed_record``
    keeps the root seed the sample was drawn with, for replay.
    """

    observations: tuple[ProbVector, ...]
    outlier_indices: tuple[int, ...] | None = None
    seed_record: int | None = None

    def __post_init__(self):
        obs = tuple(self.observations)
        object.__setattr__(self, "observations", obs)
        if obs:
            k = obs[0].k
            for i, v in enumerate(obs):
                if v.k != k:
                    raise DimensionMismatch(
                        f"observation {i} has dimension {v.k}, expected {k}"
                    )
        if self.outlier_indices is not None:
            idx = tuple(sorted(int(i) for i in self.outlier_indices))
            if idx and (idx[0] < 0 or idx[-1] >= len(obs)):
                raise ValueError(
                    f"outlier indices must lie in [0, {len(obs)}), got {idx}"
                )
            object.__setattr__(self, "outlier_indices", idx)

    @property
    def n(self) -> int:
        return len(self.observations)

    @property
    def k(self) -> int:
        if not self.observations:
            raise EmptySample("sample has no observations")
        return self.observations[0].k

    def matrix(self) -> np.ndarray:
        """Observations stacked as an (n, k) array."""
        if not self.observations:
            raise EmptySample("sample has no observations")
        return np.stack([v.entries for v in self.observations])

    def to_json_obj(self) -> dict:
        obj: dict = {
            "n": self.n,
            "k": self.k if self.observations else 0,
            "observations": [[float(x) for x in v.entries] for v in self.observations],
        }
        obj["outlier_indices"] = (
            list(self.outlier_indices) if self.outlier_indices is not None else None
        )
        obj["seed"] = self.seed_record
        return obj

    @classmethod
    def from_json_obj(cls, obj: dict) -> "Sample":
        obs = tuple(make_prob_vector(row, policy="reject") for row in obj["observations"])
        outliers = obj.get("outlier_indices")
        return cls(
            observations=obs,
            outlier_indices=tuple(outliers) if outliers is not None else None,
            seed_record=obj.get("seed"),
        )


def sample_mean(sample: Sample) -> ProbVector:
    """Arithmetic mean of the observations, itself a simplex point.

    The mean of points of the simplex is a convex combination of them, so it
    passes ProbVector validation up to floating tolerance; the result does
    not depend on observation order beyond roundoff.
    """
    if sample.n == 0:
        raise EmptySample("cannot average an empty sample")
    return ProbVector(sample.matrix().mean(axis=0))


# ---------------------------------------------------------------------------
# Rebinning
# ---------------------------------------------------------------------------


def rebin_starts(k: int, new_k: int) -> np.ndarray:
    """Start index of each of the ``new_k`` contiguous near-equal groups."""
    return np.array([(j * k) // new_k for j in range(new_k)], dtype=np.intp)


def rebin_index(j: int, k: int, new_k: int) -> int:
    """Group that original index ``j`` falls into under :func:`rebin`."""
    starts = rebin_starts(k, new_k)
    return int(np.searchsorted(starts, j, side="right") - 1)


def rebin(v: ProbVector, new_k: int) -> ProbVector:
    """Merge adjacent entries into ``new_k`` contiguous groups.

    Group ``j`` collects original indices ``floor(j*k/new_k)`` through
    ``floor((j+1)*k/new_k) - 1``, so group widths differ by at most one and
    total mass is conserved exactly up to roundoff.
    """
    if not isinstance(new_k, (int, np.integer)) or isinstance(new_k, bool):
        raise BadTargetDimension(f"target dimension must be an integer, got {new_k!r}")
    k = v.k
    if not 1 <= new_k <= k:
        raise BadTargetDimension(f"target dimension {new_k} outside [1, {k}]")
    if new_k == k:
        return v
    grouped = np.add.reduceat(v.entries, rebin_starts(k, int(new_k)))
    return ProbVector(grouped)
