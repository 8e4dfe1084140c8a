"""Inclusion-exclusion probability generating functions.

For a uniform (balanced) perfect matching ``R`` and edge-disjoint members
``D_1 .. D_ell`` the generating function of ``X = (|R n D_m|)_m`` is

    G(s) = sum_x  mu_x * w(x) * (s - 1)^{psi1(x)}

where ``mu_x`` counts ``x``-matchings inside the family and ``w(x)`` is the
probability that one fixed ``x``-matching lies in ``R``.  ``PGFSeries``
stores the coefficients ``alpha_x = mu_x w(x)`` exactly.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from math import comb
from typing import Iterable, Mapping, Sequence

from .enumeration import falling
from .errors import (
    ModelError,
    NegativeMass,
    ProfileOutOfRange,
    ProfileTooLarge,
    UnsupportedHost,
)
from .graphs import (
    COMPLETE,
    COMPLETE_MINUS,
    Edge,
    HostGraph,
    ProfileShape,
    SubgraphFamily,
    build_host,
    decompose_family,
    validate_family,
)
from .pmf import JointPMF

Profile = tuple[int, ...]


def extension_weight(host: HostGraph, x: Sequence[int], ell: int | None = None) -> Fraction:
    """Probability that a fixed ``x``-matching is contained in ``R``.

    ``x`` is a flat profile; on complete hosts only its total matters.
    Raises :class:`ProfileTooLarge` where the probability is zero because
    the matching cannot fit (too many edges, or more than ``n`` on a pair).
    """
    if host.kind == COMPLETE_MINUS:
        raise UnsupportedHost("no closed extension weight for K_2n - N; condition instead")
    if host.kind == COMPLETE:
        t = sum(x)
        if t > host.n:
            raise ProfileTooLarge(f"|x| = {t} exceeds n = {host.n}")
        return Fraction(falling(host.n, t) * 2 ** t, falling(2 * host.n, 2 * t))
    lam = host.shape(1).lam
    if ell is None:
        ell, rem = divmod(len(x), lam)
        if rem:
            raise ModelError(f"profile length {len(x)} is not a multiple of {lam}")
    shape = host.shape(ell)
    x = shape.flatten(x)
    per_pair = shape.psi3(x)
    if any(c > host.n for c in per_pair):
        raise ProfileTooLarge(f"pair totals {per_pair} exceed n = {host.n}")
    num = 1
    for c in per_pair:
        num *= falling(host.n, c)
    den = 1
    for c in shape.psi2(x):
        den *= falling(host.part_size, c)
    return Fraction(num, den)


def _coordinate_classes(family: SubgraphFamily) -> list[list[Edge]]:
    classes: list[list[Edge]] = [[] for _ in range(family.shape.size)]
    for e, coords in family.slots.items():
        if len(coords) > 1:
            raise ModelError("x-matchings need an edge-disjoint family")
        classes[coords[0]].append(e)
    for cls in classes:
        cls.sort()
    return classes


def count_x_matchings(family: SubgraphFamily, x) -> int:
    """Count ``x``-matchings by backtracking over each coordinate's edges in canonical order."""
    shape = family.shape
    x = shape.flatten(x)
    classes = _coordinate_classes(family)
    for c, want in enumerate(x):
        if want > len(classes[c]):
            raise ProfileOutOfRange(f"profile entry {want} exceeds the {len(classes[c])} edges of coordinate {c}")
    todo = [(classes[c], want) for c, want in enumerate(x) if want]
    used: set[int] = set()

    def rec(slot: int, start: int, left: int) -> int:
        if left == 0:
            if slot + 1 == len(todo):
                return 1
            return rec(slot + 1, 0, todo[slot + 1][1])
        edges = todo[slot][0]
        total = 0
        for idx in range(start, len(edges) - left + 1):
            u, v = edges[idx]
            if u in used or v in used:
                continue
            used.add(u)
            used.add(v)
            total += rec(slot, idx + 1, left - 1)
            used.discard(u)
            used.discard(v)
        return total

    if not todo:
        return 1
    return rec(0, 0, todo[0][1])


def x_matching_counts(family: SubgraphFamily) -> dict[Profile, int]:
    """``mu_x`` for every profile with at least one ``x``-matching.

    The union of the members is split into connected components.  Each
    component is swept edge by edge, keeping only the set of matched
    vertices that still have unprocessed edges (a frontier), and the
    per-component count polynomials are multiplied together.
    """
    shape = family.shape
    size = shape.size
    edges = [(e, coords[0]) for e, coords in _labelled_edges(family)]

    parent: dict[int, int] = {}

    def find(a: int) -> int:
        while parent.setdefault(a, a) != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for (u, v), _ in edges:
        ru, rv = find(u), find(v)
        if ru != rv:
            parent[max(ru, rv)] = min(ru, rv)
    components: dict[int, list[tuple[Edge, int]]] = defaultdict(list)
    for item in edges:
        components[find(item[0][0])].append(item)

    result: dict[Profile, int] = {shape.zero(): 1}
    for root in sorted(components):
        comp_poly = _component_polynomial(components[root])
        merged: dict[Profile, int] = defaultdict(int)
        for a, ca in result.items():
            for b, cb in comp_poly.items():
                key = list(a)
                for coord, k in b:
                    key[coord] += k
                merged[tuple(key)] += ca * cb
        result = dict(merged)
    assert all(len(k) == size for k in result)
    return result


def _labelled_edges(family: SubgraphFamily) -> list[tuple[Edge, tuple[int, ...]]]:
    out = sorted(family.slots.items())
    if any(len(coords) > 1 for _, coords in out):
        raise ModelError("x-matchings need an edge-disjoint family")
    return out


def _component_polynomial(items: list[tuple[Edge, int]]) -> dict[tuple[tuple[int, int], ...], int]:
    """Matching counts of one component as ``{((coord, count), ...): mu}``."""
    adj: dict[int, list[int]] = defaultdict(list)
    for (u, v), _ in items:
        adj[u].append(v)
        adj[v].append(u)
    # BFS order keeps the frontier narrow on paths, cycles and grids.
    start = min(adj)
    pos = {start: 0}
    queue = [start]
    for a in queue:
        for b in sorted(adj[a]):
            if b not in pos:
                pos[b] = len(pos)
                queue.append(b)
    order = sorted(items, key=lambda it: (max(pos[it[0][0]], pos[it[0][1]]), min(pos[it[0][0]], pos[it[0][1]])))
    coords = sorted({c for _, c in items})
    local = {c: i for i, c in enumerate(coords)}
    last_use: dict[int, int] = {}
    for t, ((u, v), _) in enumerate(order):
        last_use[u] = t
        last_use[v] = t

    zero = (0,) * len(coords)
    states: dict[frozenset[int], dict[tuple[int, ...], int]] = {frozenset(): {zero: 1}}
    for t, ((u, v), c) in enumerate(order):
        lc = local[c]
        retire = {w for w in (u, v) if last_use[w] == t}
        nxt: dict[frozenset[int], dict[tuple[int, ...], int]] = defaultdict(lambda: defaultdict(int))
        for used, poly in states.items():
            skip = nxt[used - retire] if retire else nxt[used]
            for k, cnt in poly.items():
                skip[k] += cnt
            if u in used or v in used:
                continue
            take = nxt[(used | {u, v}) - retire]
            for k, cnt in poly.items():
                k2 = k[:lc] + (k[lc] + 1,) + k[lc + 1:]
                take[k2] += cnt
        states = nxt
    (final,) = states.values()
    return {tuple((coords[i], k) for i, k in enumerate(key) if k): cnt for key, cnt in final.items()}


@dataclass(frozen=True)
class PGFSeries:
    """Coefficients of a joint PGF in the ``(s - 1)^{psi1(x)}`` basis.

    ``coeffs`` is keyed by flat profiles of ``shape``; every stored value is
    positive and the zero profile carries 1.
    """

    host: HostGraph
    shape: ProfileShape
    coeffs: Mapping[Profile, Fraction]

    @property
    def ell(self) -> int:
        return self.shape.ell

    def by_psi1(self) -> dict[Profile, Fraction]:
        """Collapse part-pair detail: coefficients of ``(s - 1)^y`` for ``y`` in ``N^ell``."""
        out: dict[Profile, Fraction] = defaultdict(Fraction)
        for x, a in self.coeffs.items():
            out[self.shape.psi1(x)] += a
        return dict(out)

    def evaluate(self, s: Sequence) -> Fraction:
        if len(s) != self.ell:
            raise ModelError(f"need {self.ell} arguments")
        total = Fraction(0)
        for y, a in self.by_psi1().items():
            term = a
            for sm, ym in zip(s, y):
                term *= (Fraction(sm) - 1) ** ym
            total += term
        return total


def build_pgf(family: SubgraphFamily) -> PGFSeries:
    """Exact coefficients ``alpha_x = mu_x * extension_weight(x)`` for a disjoint family."""
    host = family.host
    if host.kind == COMPLETE_MINUS:
        raise UnsupportedHost("build the PGF on K_2n and condition (see conditional_pmf_avoiding)")
    if not family.is_pairwise_disjoint():
        raise ModelError("build_pgf needs an edge-disjoint family; decompose overlapping families first")
    coeffs: dict[Profile, Fraction] = {}
    for x, mu in sorted(x_matching_counts(family).items()):
        try:
            w = extension_weight(host, x, family.ell)
        except ProfileTooLarge:
            continue
        coeffs[x] = mu * w
    return PGFSeries(host, family.shape, coeffs)


def pmf_from_series(ell: int, coeffs: Mapping[Profile, Fraction]) -> JointPMF:
    """Re-expand ``sum_y c_y (s - 1)^y`` in powers of ``s``.

    ``P(k) = sum_y c_y prod_m C(y_m, k_m) (-1)^{|y| - |k|}``.
    """
    acc: dict[Profile, Fraction] = defaultdict(Fraction)
    for y, c in coeffs.items():
        if not c:
            continue
        ysum = sum(y)
        for k in product(*(range(ym + 1) for ym in y)):
            term = c
            for ym, km in zip(y, k):
                term *= comb(ym, km)
            acc[k] += term if (ysum - sum(k)) % 2 == 0 else -term
    mass = {}
    for k in sorted(acc):
        p = acc[k]
        if p < 0:
            raise NegativeMass(f"P({k}) = {p} < 0")
        if p:
            mass[k] = p
    return JointPMF(ell, mass)


def pmf_from_pgf(pgf: PGFSeries) -> JointPMF:
    pmf = pmf_from_series(pgf.ell, pgf.by_psi1())
    if pmf.total() != 1:
        raise NegativeMass(f"expanded masses sum to {pmf.total()}, not 1")
    return pmf


def series_from_pmf(pmf: JointPMF) -> dict[Profile, Fraction]:
    """Binomial moments ``E[prod_m C(X_m, y_m)]``: the ``(s - 1)``-basis coefficients of ``pmf``."""
    acc: dict[Profile, Fraction] = defaultdict(Fraction)
    for k, p in pmf.mass.items():
        for y in product(*(range(km + 1) for km in k)):
            term = p
            for km, ym in zip(k, y):
                term *= comb(km, ym)
            acc[y] += term
    return {y: c for y, c in sorted(acc.items()) if c}


def conditional_pmf_avoiding(n: int, forbidden: Iterable, members: Sequence[Iterable]) -> JointPMF:
    """Exact law of the intersections with a uniform perfect matching of ``K_2n - N``.

    Builds the PGF on ``K_2n`` for the members plus ``N`` as an extra
    coordinate and conditions on that coordinate being zero.
    """
    host = build_host(COMPLETE, n)
    forbidden = list(forbidden)
    family = validate_family(host, [*members, forbidden], disjoint_mode=True)
    joint = pmf_from_pgf(build_pgf(family))
    return joint.condition(family.ell - 1, 0)


def conditional_series(family: SubgraphFamily) -> tuple[SubgraphFamily, PGFSeries]:
    """The ``K_2n`` family ``(D_1 .. D_ell, N)`` and its PGF for a complete-minus family."""
    host = family.host
    full = validate_family(build_host(COMPLETE, host.n), [*family.members, host.forbidden], disjoint_mode=True)
    return full, build_pgf(full)


def exact_pmf(family: SubgraphFamily) -> JointPMF:
    """Exact law for any host; overlapping members go through the decomposition."""
    if not family.is_pairwise_disjoint():
        dec = decompose_family(family)
        return exact_pmf(dec.as_family()).pushforward(dec.subsets, family.ell)
    host = family.host
    if host.kind == COMPLETE_MINUS:
        return conditional_pmf_avoiding(host.n, host.forbidden, family.members)
    return pmf_from_pgf(build_pgf(family))

