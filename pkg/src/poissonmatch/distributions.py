"""Poisson reference laws, total variation, and the coefficient-level TV bound.

Total variation here is ``sum_k |P(k) - Q(k)|`` with no factor 1/2, so two
point masses at different outcomes are at distance 2.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from .errors import DimensionMismatch, ModelError, ShapeMismatch
from .graphs import SubgraphFamily, decompose_family
from .pmf import JointPMF

DEFAULT_EPSILON = 1e-12


@dataclass(frozen=True)
class PoissonSpec:
    """Independent Poisson coordinates, or sums of independent pieces.

    In independent mode ``rates[m]`` is the mean of ``Y_m``.  In decomposed
    mode ``rates[t]`` is the mean of the piece ``Ybar_S`` for
    ``S = subsets[t]`` and ``Y_m`` is the sum of the pieces containing ``m``.
    """

    ell: int
    rates: tuple[Fraction, ...]
    subsets: tuple[frozenset[int], ...] | None = None

    def __post_init__(self):
        if any(r < 0 for r in self.rates):
            raise ModelError("Poisson means must be nonnegative")
        if self.subsets is not None and len(self.subsets) != len(self.rates):
            raise ModelError("one rate per subset is required")
        if self.subsets is None and len(self.rates) != self.ell:
            raise ModelError("one rate per coordinate is required")

    @property
    def mode(self) -> str:
        return "independent" if self.subsets is None else "decomposed"

    def components(self) -> list[tuple[Fraction, tuple[int, ...]]]:
        if self.subsets is None:
            return [(r, (m,)) for m, r in enumerate(self.rates)]
        return [(r, tuple(sorted(s))) for r, s in zip(self.rates, self.subsets)]

    def marginal_means(self) -> tuple[Fraction, ...]:
        out = [Fraction(0)] * self.ell
        for r, members in self.components():
            for m in members:
                out[m] += r
        return tuple(out)


def poisson_spec(family: SubgraphFamily, decomposed: bool = False) -> PoissonSpec:
    """Limit law for ``family``: means ``|E(D)| / 2n`` or ``|E(D)| / ((r-1)^2 n)``."""
    den = family.host.poisson_denominator
    if not decomposed:
        return PoissonSpec(family.ell, tuple(Fraction(d, den) for d in family.d))
    dec = decompose_family(family)
    return PoissonSpec(family.ell, tuple(Fraction(len(p), den) for p in dec.pieces), dec.subsets)


def _poisson_terms(rate: float) -> tuple[list[float], list[float]]:
    """Masses ``p_k`` and upper tails ``P(Y > k)`` out to where terms vanish."""
    if rate == 0:
        return [1.0], [0.0]
    if rate > 700:
        raise ModelError(f"Poisson mean {rate} too large for float evaluation")
    p = [math.exp(-rate)]
    k = 0
    while not (k > rate and p[-1] < 1e-40):
        k += 1
        p.append(p[-1] * rate / k)
    # Remainder sums, accumulated from the far tail inward.
    tails = [0.0] * len(p)
    acc = 0.0
    for j in range(len(p) - 1, 0, -1):
        acc += p[j]
        tails[j - 1] = acc
    return p, tails


def poisson_cutoff(rate: float, budget: float) -> tuple[int, float]:
    """Smallest ``K`` with ``P(Y > K) < budget``, and that tail."""
    _, tails = _poisson_terms(rate)
    for K, t in enumerate(tails):
        if t < budget:
            return K, t
    raise AssertionError("tail never fell below budget")


def poisson_joint_pmf(spec: PoissonSpec, epsilon: float = DEFAULT_EPSILON) -> JointPMF:
    """Truncated joint law of the Poisson vector, with the discarded mass recorded.

    Each of the ``q`` independent components is cut at the smallest ``K``
    whose tail is below ``epsilon / (2 q)``; the product of the truncated
    components is pushed through the coordinate sums.
    """
    if not 0 < epsilon < 1:
        raise ModelError("epsilon must lie in (0, 1)")
    comps = spec.components()
    budget = epsilon / (2 * len(comps))
    dist: dict[tuple[int, ...], float] = {(0,) * spec.ell: 1.0}
    for rate, members in comps:
        rate = float(rate)
        if rate == 0:
            continue
        K, _ = poisson_cutoff(rate, budget)
        p, _ = _poisson_terms(rate)
        nxt: dict[tuple[int, ...], float] = {}
        for k, pk in dist.items():
            for j in range(K + 1):
                key = list(k)
                for m in members:
                    key[m] += j
                key = tuple(key)
                nxt[key] = nxt.get(key, 0.0) + pk * p[j]
        dist = nxt
    # The analytic discarded mass is -expm1(log_keep); the float complement
    # agrees with it to rounding and keeps sum(mass) + tail_bound <= 1.
    missing = max(0.0, 1.0 - math.fsum(dist.values()))
    return JointPMF(spec.ell, dict(sorted(dist.items())), exact=False, tail_bound=missing)


def discarded_mass(spec: PoissonSpec, epsilon: float = DEFAULT_EPSILON) -> float:
    """Analytic mass removed by the truncation in :func:`poisson_joint_pmf`."""
    budget = epsilon / (2 * len(spec.components()))
    log_keep = 0.0
    for rate, _ in spec.components():
        if rate:
            log_keep += math.log1p(-poisson_cutoff(float(rate), budget)[1])
    return -math.expm1(log_keep)


@dataclass(frozen=True)
class TVResult:
    value: Fraction | float
    lower: float
    upper: float

    def __float__(self) -> float:
        return float(self.value)


def tv_distance(P: JointPMF, Q: JointPMF) -> TVResult:
    """``sum_k |P(k) - Q(k)|`` over the union of supports.

    The interval widens by both laws' ``tail_bound``; for two exact laws it
    is a single exact rational.
    """
    if P.ell != Q.ell:
        raise DimensionMismatch(f"laws on N^{P.ell} and N^{Q.ell}")
    keys = set(P.mass) | set(Q.mass)
    if P.exact and Q.exact:
        v = sum((abs(P[k] - Q[k]) for k in keys), Fraction(0))
        slack = P.tail_bound + Q.tail_bound
        return TVResult(v, max(0.0, float(v) - slack), float(v) + slack)
    v = math.fsum(abs(float(P[k]) - float(Q[k])) for k in sorted(keys))
    slack = P.tail_bound + Q.tail_bound
    return TVResult(v, max(0.0, v - slack), v + slack)


@dataclass(frozen=True)
class PoissonCoefficients:
    """``(s - 1)``-basis coefficients of an independent Poisson vector.

    ``beta_x = prod_c rate_c^{x_c} / x_c!`` over flat profile coordinates,
    so ``sum_x beta_x 2^{|x|} = exp(2 sum_c rate_c)`` in closed form.
    """

    rates: tuple[Fraction, ...]

    def coefficient(self, x: Sequence[int]) -> Fraction:
        if len(x) != len(self.rates):
            raise ShapeMismatch(f"profile of length {len(x)} against {len(self.rates)} rates")
        out = Fraction(1)
        for rate, k in zip(self.rates, x):
            if k:
                out *= rate ** k / math.factorial(k)
        return out

    def weighted_total(self) -> float:
        return math.exp(2 * float(sum(self.rates)))


def poisson_coefficients(family: SubgraphFamily) -> PoissonCoefficients:
    """Coefficients matching the flat profile layout of ``family`` (per member and part pair)."""
    den = family.host.poisson_denominator
    return PoissonCoefficients(tuple(Fraction(c, den) for row in family.dcube for c in row))


def coeff_tv_bound(
    alpha: Mapping[tuple[int, ...], Fraction],
    beta: PoissonCoefficients | Mapping[tuple[int, ...], Fraction],
) -> float:
    """``sum_x |alpha_x - beta_x| 2^{|x|}``, an upper bound on the TV of the two laws.

    ``alpha`` has finite support.  A finite ``beta`` mapping is summed over
    the union of supports; a :class:`PoissonCoefficients` contributes its
    off-support mass through the closed-form total.
    """
    if isinstance(beta, PoissonCoefficients):
        width = len(beta.rates)
        if any(len(x) != width for x in alpha):
            raise ShapeMismatch(f"alpha profiles do not have {width} coordinates")
        diff = Fraction(0)
        covered = Fraction(0)
        for x, a in alpha.items():
            b = beta.coefficient(x)
            w = 2 ** sum(x)
            diff += abs(a - b) * w
            covered += b * w
        rest = max(0.0, beta.weighted_total() - float(covered))
        return float(diff) + rest
    widths = {len(x) for x in alpha} | {len(x) for x in beta}
    if len(widths) > 1:
        raise ShapeMismatch(f"profile widths differ: {sorted(widths)}")
    total = Fraction(0)
    for x in set(alpha) | set(beta):
        total += abs(Fraction(alpha.get(x, 0)) - Fraction(beta.get(x, 0))) * 2 ** sum(x)
    return float(total)
