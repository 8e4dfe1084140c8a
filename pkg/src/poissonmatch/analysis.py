"""One-instance comparison of the exact law with its Poisson limit."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .distributions import (
    DEFAULT_EPSILON,
    PoissonCoefficients,
    PoissonSpec,
    TVResult,
    coeff_tv_bound,
    poisson_coefficients,
    poisson_joint_pmf,
    poisson_spec,
    tv_distance,
)
from .graphs import COMPLETE_MINUS, Decomposition, SubgraphFamily, decompose_family
from .pgf import build_pgf, exact_pmf, series_from_pmf
from .pmf import JointPMF


def coefficient_series(family: SubgraphFamily) -> dict[tuple[int, ...], Fraction]:
    """``(s - 1)``-basis coefficients of the exact law of a disjoint family.

    Complete and multipartite hosts use the inclusion-exclusion PGF (keyed
    by member and part pair); complete-minus hosts use the binomial moments
    of the conditioned law.
    """
    if family.host.kind == COMPLETE_MINUS:
        return series_from_pmf(exact_pmf(family))
    return dict(build_pgf(family).coeffs)


@dataclass(frozen=True)
class InstanceReport:
    family: SubgraphFamily
    exact: JointPMF
    spec: PoissonSpec
    poisson: JointPMF
    tv: TVResult
    coeff_bound: float
    alpha: dict
    beta: PoissonCoefficients
    decomposition: Decomposition | None = None


def analyze(family: SubgraphFamily, epsilon: float = DEFAULT_EPSILON, decompose: bool = False) -> InstanceReport:
    """Exact law, Poisson reference, their TV and the coefficient bound.

    Overlapping members always use the decomposed reference; the bound is
    then taken over the disjoint pieces, which dominates the TV of the
    summed vectors.
    """
    dec = None
    target = family
    if decompose or not family.is_pairwise_disjoint():
        dec = decompose_family(family)
        target = dec.as_family()
    exact = exact_pmf(family)
    spec = poisson_spec(family, decomposed=dec is not None)
    poisson = poisson_joint_pmf(spec, epsilon)
    alpha = coefficient_series(target)
    beta = poisson_coefficients(target)
    return InstanceReport(
        family=family,
        exact=exact,
        spec=spec,
        poisson=poisson,
        tv=tv_distance(exact, poisson),
        coeff_bound=coeff_tv_bound(alpha, beta),
        alpha=alpha,
        beta=beta,
        decomposition=dec,
    )
