"""Closed-form risk envelopes and confidence-region radii for the sample mean.

For sample size ``n``, sparsity ``s`` (nonzero entries of the reference
vector) and contamination rate ``epsilon``, the worst-case expected error of
the sample mean under adversarial rewriting of an epsilon fraction of the
points is bounded by

* TV:            ``sqrt(s/n) + 2*epsilon``
* Hellinger:     ``sqrt(s/n) + 2*sqrt(epsilon)``
* L2:            ``sqrt(1/n) + sqrt(2)*epsilon``
* L-infinity:    ``sqrt(1/n) + sqrt(2)*epsilon``     (dominated by L2)
* Wasserstein-q: ``sqrt(2) * (sqrt(s/n) + 2*epsilon) ** (1/q)``

No estimator can beat these rates by more than a constant factor: the
matching lower bounds have shapes ``sqrt(s/n) + epsilon`` (TV),
``sqrt(s/n) + sqrt(epsilon)`` (Hellinger) and ``sqrt(1/n) + epsilon`` (L2),
known up to a universal constant that this module deliberately does not
invent. :func:`rate_lower_shape` returns the bracketed shape alone; the
upper envelope never exceeds 3x the shape anywhere in the valid domain,
which is the machine-checkable form of rate optimality used in the tests.

The contamination term of the lower bound is witnessed by an explicit
two-point construction, exposed by :func:`modulus_of_continuity` so its
claimed distances can be verified numerically rather than trusted.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import (
    DimensionMismatch,
    EpsilonOutOfRange,
    NotOnSimplex,
    UnsupportedDistance,
)
from .simplex import (
    DistanceKind,
    ProbVector,
    distance,
    make_prob_vector,
)


def _check_positive_int(name: str, value) -> int:
    if not isinstance(value, (int, np.integer)) or isinstance(value, bool) or value < 1:
        raise ValueError(f"{name} must be a positive integer, got {value!r}")
    return int(value)


@dataclass(frozen=True)
class RiskEnvelope:
    """Parameters of a worst-case risk bound: distance, n, s, k, epsilon."""

    kind: DistanceKind
    n: int
    s: int
    k: int
    epsilon: float

    def __post_init__(self):
        n = _check_positive_int("n", self.n)
        s = _check_positive_int("s", self.s)
        k = _check_positive_int("k", self.k)
        if s > k:
            raise ValueError(f"sparsity s={s} exceeds dimension k={k}")
        if s > n:
            raise ValueError(f"sparsity s={s} exceeds sample size n={n}")
        eps = float(self.epsilon)
        if not 0.0 <= eps <= 1.0:
            raise EpsilonOutOfRange(f"epsilon={eps} outside [0, 1]")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "s", s)
        object.__setattr__(self, "k", k)
        object.__setattr__(self, "epsilon", eps)


@dataclass(frozen=True)
class ConfidenceSpec:
    """Inputs of a confidence-region radius: n, s, epsilon, delta.

    Both the contamination rate and the sparsity are taken as known inputs;
    the radii are not adaptive to them.
    """

    n: int
    s: int
    epsilon: float
    delta: float

    def __post_init__(self):
        n = _check_positive_int("n", self.n)
        s = _check_positive_int("s", self.s)
        eps = float(self.epsilon)
        if not 0.0 <= eps <= 1.0:
            raise EpsilonOutOfRange(f"epsilon={eps} outside [0, 1]")
        delta = float(self.delta)
        if not 0.0 < delta < 1.0:
            raise ValueError(f"delta={delta} outside (0, 1)")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "s", s)
        object.__setattr__(self, "epsilon", eps)
        object.__setattr__(self, "delta", delta)


def risk_upper_bound(envelope: RiskEnvelope) -> float:
    """Worst-case expected error of the sample mean; see module docstring."""
    n, s, eps = envelope.n, envelope.s, envelope.epsilon
    tag = envelope.kind.tag
    if tag == "tv":
        return math.sqrt(s / n) + 2.0 * eps
    if tag == "hellinger":
        return math.sqrt(s / n) + 2.0 * math.sqrt(eps)
    if tag in ("l2", "linf"):
        return math.sqrt(1.0 / n) + math.sqrt(2.0) * eps
    # wasserstein
    return math.sqrt(2.0) * (math.sqrt(s / n) + 2.0 * eps) ** (1.0 / envelope.kind.q)


def rate_lower_shape(kind: DistanceKind, n: int, s: int, epsilon: float) -> float:
    """Shape of the matching minimax lower bound, without its unknown constant.

    Defined for TV, Hellinger and L2; the Wasserstein-q shape follows from
    the TV shape through the coupling closed form. There is no lower bound
    for the L-infinity norm here, only the upper envelope inherited from L2.
    """
    n = _check_positive_int("n", n)
    s = _check_positive_int("s", s)
    eps = float(epsilon)
    if not 0.0 <= eps <= 1.0:
        raise EpsilonOutOfRange(f"epsilon={eps} outside [0, 1]")
    tag = kind.tag
    if tag == "tv":
        return math.sqrt(s / n) + eps
    if tag == "hellinger":
        return math.sqrt(s / n) + math.sqrt(eps)
    if tag == "l2":
        return math.sqrt(1.0 / n) + eps
    if tag == "wasserstein":
        return math.sqrt(2.0) * (math.sqrt(s / n) + eps) ** (1.0 / kind.q)
    raise UnsupportedDistance("no lower-bound shape is defined for the L-infinity norm")


@dataclass(frozen=True)
class ModulusBound:
    """Lower bound on how far two laws can sit while remaining confusable.

    ``witness`` is an explicit pair realizing the bound: the TV distance
    between the two witnesses is exactly ``epsilon / (1 - epsilon)`` and
    their ``kind``-distance is at least ``bound``.
    """

    kind: DistanceKind
    epsilon: float
    bound: float
    witness: tuple[ProbVector, ProbVector]


def modulus_witness(epsilon: float) -> tuple[ProbVector, ProbVector]:
    """The two-point construction: ``e_1`` against a vector shifted by
    ``t = epsilon / (1 - epsilon)`` from the first to the second coordinate.

    Returned in dimension 3 so the pair embeds in any simplex of interest.
    """
    if not 0.0 <= epsilon <= 0.5:
        raise EpsilonOutOfRange(f"epsilon={epsilon} outside [0, 0.5]")
    t = epsilon / (1.0 - epsilon)
    first = ProbVector(np.array([1.0, 0.0, 0.0]))
    second = ProbVector(np.array([1.0 - t, t, 0.0]))
    return first, second


def modulus_of_continuity(kind: DistanceKind, epsilon: float) -> ModulusBound:
    """Proven lower bound on the confusable-pair distance, with its witness.

    Values: ``epsilon`` (TV), ``sqrt(2)*epsilon`` (L2),
    ``sqrt(epsilon/2)`` (Hellinger), each valid for epsilon in [0, 1/2].
    """
    witness = modulus_witness(epsilon)
    tag = kind.tag
    if tag == "tv":
        bound = epsilon
    elif tag == "l2":
        bound = math.sqrt(2.0) * epsilon
    elif tag == "hellinger":
        bound = math.sqrt(epsilon / 2.0)
    else:
        raise UnsupportedDistance(
            f"modulus bound defined for tv, l2, hellinger; got {kind.label!r}"
        )
    return ModulusBound(kind=kind, epsilon=float(epsilon), bound=bound, witness=witness)


def confidence_radius(spec: ConfidenceSpec, kind: DistanceKind) -> float:
    """Radius of the level-(1 - delta) confidence region around the sample mean.

    * L2:        ``sqrt(1/n) + sqrt(2)*eps + sqrt(log(1/delta)/n)``
    * TV:        ``sqrt(s/n) + 2*eps + sqrt(2*log(1/delta)/n)``
    * Hellinger: ``3.2*sqrt((s/n)*log(2s/delta)) + sqrt(2*eps)
      + sqrt(log(2/delta)/n)``
    """
    n, s, eps, delta = spec.n, spec.s, spec.epsilon, spec.delta
    tag = kind.tag
    if tag == "l2":
        return math.sqrt(1.0 / n) + math.sqrt(2.0) * eps + math.sqrt(math.log(1.0 / delta) / n)
    if tag == "tv":
        return math.sqrt(s / n) + 2.0 * eps + math.sqrt(2.0 * math.log(1.0 / delta) / n)
    if tag == "hellinger":
        return (
            3.2 * math.sqrt((s / n) * math.log(2.0 * s / delta))
            + math.sqrt(2.0 * eps)
            + math.sqrt(math.log(2.0 / delta) / n)
        )
    raise UnsupportedDistance(
        f"confidence radii defined for tv, hellinger, l2; got {kind.label!r}"
    )


def region_contains(
    center: ProbVector, candidate, spec: ConfidenceSpec, kind: DistanceKind
) -> bool:
    """Whether ``candidate`` lies in the confidence ball around ``center``.

    ``candidate`` may be a ProbVector or raw entries; raw entries must
    themselves be a valid simplex point.
    """
    if not isinstance(candidate, ProbVector):
        try:
            candidate = make_prob_vector(candidate, policy="reject")
        except (ValueError, TypeError) as exc:
            raise NotOnSimplex(f"candidate is not a simplex point: {exc}") from exc
    if candidate.k != center.k:
        raise DimensionMismatch(
            f"candidate has dimension {candidate.k}, center has {center.k}"
        )
    return distance(center, candidate, kind) <= confidence_radius(spec, kind)
