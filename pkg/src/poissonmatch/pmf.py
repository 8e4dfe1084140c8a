"""Sparse joint probability mass functions on ``N^ell``."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .errors import DimensionMismatch, ModelError, ZeroConditioningMass

Number = Fraction | float


@dataclass(frozen=True)
class JointPMF:
    """Probability of each outcome vector ``k``; absent keys have mass 0.

    ``tail_bound`` is mass known to be missing from ``mass`` (truncated
    Poisson laws); it is 0 for exact and empirical laws.
    """

    ell: int
    mass: Mapping[tuple[int, ...], Number]
    exact: bool = True
    tail_bound: float = 0.0
    empirical: bool = False

    def __post_init__(self):
        for k in self.mass:
            if len(k) != self.ell:
                raise DimensionMismatch(f"outcome {k} does not have {self.ell} coordinates")

    def __getitem__(self, k: Sequence[int]) -> Number:
        return self.mass.get(tuple(k), Fraction(0) if self.exact else 0.0)

    def support(self) -> list[tuple[int, ...]]:
        return sorted(self.mass)

    def total(self) -> Number:
        if self.exact:
            return sum(self.mass.values(), Fraction(0))
        return math.fsum(self.mass.values())

    def marginal(self, m: int) -> JointPMF:
        return self.project([m])

    def project(self, coords: Sequence[int]) -> JointPMF:
        out: dict[tuple[int, ...], Number] = {}
        for k, p in self.mass.items():
            key = tuple(k[c] for c in coords)
            out[key] = out.get(key, 0) + p
        return JointPMF(len(coords), out, self.exact, self.tail_bound, self.empirical)

    def mean(self, m: int) -> Number:
        if self.exact:
            return sum((p * k[m] for k, p in self.mass.items()), Fraction(0))
        return math.fsum(p * k[m] for k, p in self.mass.items())

    def condition(self, coord: int, value: int) -> JointPMF:
        """Law of the remaining coordinates given ``X[coord] == value``."""
        if self.tail_bound:
            raise ModelError("conditioning a truncated law is not supported")
        keep = [c for c in range(self.ell) if c != coord]
        picked = {k: p for k, p in self.mass.items() if k[coord] == value}
        z = sum(picked.values(), Fraction(0) if self.exact else 0.0)
        if z == 0:
            raise ZeroConditioningMass(f"P(X[{coord}] = {value}) is zero")
        out: dict[tuple[int, ...], Number] = {}
        for k, p in picked.items():
            key = tuple(k[c] for c in keep)
            out[key] = out.get(key, 0) + p / z
        return JointPMF(len(keep), out, self.exact, 0.0, self.empirical)

    def pushforward(self, subsets: Sequence[Iterable[int]], ell: int) -> JointPMF:
        """Image under ``k_m = sum of kbar_S over the subsets S containing m``.

        Coordinate ``t`` of this law is the piece indexed by ``subsets[t]``.
        """
        subsets = [tuple(s) for s in subsets]
        if len(subsets) != self.ell:
            raise DimensionMismatch(f"{len(subsets)} subsets for a {self.ell}-dimensional law")
        out: dict[tuple[int, ...], Number] = {}
        for kbar, p in self.mass.items():
            k = [0] * ell
            for t, s in enumerate(subsets):
                if kbar[t]:
                    for m in s:
                        k[m] += kbar[t]
            key = tuple(k)
            out[key] = out.get(key, 0) + p
        return JointPMF(ell, out, self.exact, self.tail_bound, self.empirical)

    def to_float(self) -> JointPMF:
        return JointPMF(self.ell, {k: float(p) for k, p in self.mass.items()}, False, self.tail_bound, self.empirical)


def point_mass(k: Sequence[int]) -> JointPMF:
    return JointPMF(len(k), {tuple(k): Fraction(1)})


def from_counts(ell: int, counts: Mapping[tuple[int, ...], int]) -> JointPMF:
    """Empirical law from a histogram of observed outcome vectors."""
    total = sum(counts.values())
    return JointPMF(ell, {k: c / total for k, c in sorted(counts.items())}, exact=False, empirical=True)
