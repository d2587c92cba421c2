"""Outlier-robust mean estimation on the probability simplex.

The package provides the simplex vector type and its distances, five
contaminated-sample generators, closed-form risk envelopes and confidence
radii for the sample mean, a reproducible Monte Carlo harness that checks
the predicted rates empirically, and sentence-length corpus ingestion for
building realistic reference distributions. See the README for the CLI.
"""

from . import errors
from .bounds import (
    ConfidenceSpec,
    ModulusBound,
    RiskEnvelope,
    confidence_radius,
    modulus_of_continuity,
    modulus_witness,
    rate_lower_shape,
    region_contains,
    risk_upper_bound,
)
from .contamination import (
    AdversaryStrategy,
    BlockDescriptor,
    ContaminationSpec,
    RiskComparison,
    derive_seed,
    generate,
    hc_vs_hdc_risk_check,
    mean_and_outliers,
    outlier_budget,
    rebin_spec,
    sample_indices,
    sample_matrix,
)
from .corpus import (
    CorpusProfile,
    TokenizationRules,
    ingest,
    merge_profiles,
    profile_to_reference,
    rebin_counts,
)
from .montecarlo import (
    ExperimentPlan,
    ExperimentResult,
    FitReport,
    ResultRow,
    empirical_coverage,
    fit_rate,
    mc_stderr,
    result_from_csv,
    result_to_csv,
    run_experiment,
)
from .simplex import (
    HELLINGER,
    L2,
    LINF,
    TV,
    DistanceKind,
    ProbVector,
    Sample,
    basis_vector,
    distance,
    make_prob_vector,
    parse_distance,
    rebin,
    sample_mean,
    wasserstein,
)

__version__ = "0.1.0"

__all__ = [
    "AdversaryStrategy",
    "BlockDescriptor",
    "ConfidenceSpec",
    "ContaminationSpec",
    "CorpusProfile",
    "DistanceKind",
    "ExperimentPlan",
    "ExperimentResult",
    "FitReport",
    "HELLINGER",
    "L2",
    "LINF",
    "ModulusBound",
    "ProbVector",
    "ResultRow",
    "RiskComparison",
    "RiskEnvelope",
    "Sample",
    "TV",
    "TokenizationRules",
    "basis_vector",
    "confidence_radius",
    "derive_seed",
    "distance",
    "empirical_coverage",
    "errors",
    "fit_rate",
    "generate",
    "hc_vs_hdc_risk_check",
    "ingest",
    "make_prob_vector",
    "mc_stderr",
    "mean_and_outliers",
    "merge_profiles",
    "modulus_of_continuity",
    "modulus_witness",
    "outlier_budget",
    "parse_distance",
    "profile_to_reference",
    "rate_lower_shape",
    "rebin",
    "rebin_counts",
    "rebin_spec",
    "region_contains",
    "result_from_csv",
    "result_to_csv",
    "risk_upper_bound",
    "run_experiment",
    "sample_indices",
    "sample_matrix",
    "sample_mean",
    "wasserstein",
]
