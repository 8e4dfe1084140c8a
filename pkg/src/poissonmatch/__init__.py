"""Exact and simulated joint laws of random perfect matchings against sparse subgraphs,
compared with their multivariate Poisson limits."""

from .analysis import InstanceReport, analyze
from .distributions import (
    PoissonSpec,
    coeff_tv_bound,
    poisson_coefficients,
    poisson_joint_pmf,
    poisson_spec,
    tv_distance,
)
from .enumeration import (
    bpm_count,
    brute_force_pmf,
    enumerate_balanced_pms,
    enumerate_perfect_matchings,
    falling,
    pma_count,
)
from .graphs import (
    COMPLETE,
    COMPLETE_MINUS,
    MULTIPARTITE,
    HostGraph,
    IntersectionProfile,
    SubgraphFamily,
    build_host,
    decompose_family,
    intersect_profile,
    validate_family,
)
from .pgf import (
    PGFSeries,
    build_pgf,
    conditional_pmf_avoiding,
    count_x_matchings,
    exact_pmf,
    extension_weight,
    pmf_from_pgf,
    series_from_pmf,
    x_matching_counts,
)
from .pmf import JointPMF
from .rng import SeededGenerator
from .samplers import mc_pmf, sample_balanced_pm, sample_pm

__all__ = [
    "COMPLETE",
    "COMPLETE_MINUS",
    "HostGraph",
    "InstanceReport",
    "IntersectionProfile",
    "JointPMF",
    "MULTIPARTITE",
    "PGFSeries",
    "PoissonSpec",
    "SeededGenerator",
    "SubgraphFamily",
    "analyze",
    "bpm_count",
    "brute_force_pmf",
    "build_host",
    "build_pgf",
    "coeff_tv_bound",
    "conditional_pmf_avoiding",
    "count_x_matchings",
    "decompose_family",
    "enumerate_balanced_pms",
    "enumerate_perfect_matchings",
    "exact_pmf",
    "extension_weight",
    "falling",
    "intersect_profile",
    "mc_pmf",
    "pma_count",
    "pmf_from_pgf",
    "poisson_coefficients",
    "poisson_joint_pmf",
    "poisson_spec",
    "sample_balanced_pm",
    "sample_pm",
    "series_from_pmf",
    "tv_distance",
    "validate_family",
    "x_matching_counts",
]

__version__ = "0.1.0"
