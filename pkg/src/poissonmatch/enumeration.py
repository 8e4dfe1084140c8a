"""Matching counts and brute-force enumeration oracles."""

from __future__ import annotations

from collections import Counter
from fractions import Fraction
from math import comb, factorial
from typing import Iterator

from .errors import ModelError, TooLargeToEnumerate, UnsupportedHost
from .graphs import MULTIPARTITE, Edge, HostGraph, SubgraphFamily, build_host
from .pmf import JointPMF

PM_ENUMERATION_CAP = 16
BALANCED_ENUMERATION_CAP = 12


def falling(a: int, b: int) -> int:
    """Falling factorial ``a (a-1) ... (a-b+1)``; 1 when ``b == 0``."""
    out = 1
    for t in range(b):
        out *= a - t
    return out


def pma_count(n: int) -> int:
    """Number of perfect matchings of ``K_{2n}``: ``(2n)! / (n! 2^n)``."""
    if n < 0:
        raise ModelError("n must be nonnegative")
    return factorial(2 * n) // (factorial(n) * 2 ** n)


def bpm_count(r: int, n: int) -> int:
    """Number of balanced perfect matchings of ``K_{r x (r-1)n}``."""
    if r < 2 or n < 1:
        raise ModelError("need r >= 2 and n >= 1")
    per_part = factorial((r - 1) * n) // factorial(n) ** (r - 1)
    return per_part ** r * factorial(n) ** comb(r, 2)


def enumerate_perfect_matchings(host: HostGraph, cap: int = PM_ENUMERATION_CAP) -> Iterator[tuple[Edge, ...]]:
    """Yield every perfect matching of a complete (or complete-minus) host once.

    Each matching is a tuple of canonical edges sorted by their lower end.
    """
    if host.kind == MULTIPARTITE:
        raise UnsupportedHost("use enumerate_balanced_pms for multipartite hosts")
    if host.num_vertices > cap:
        raise TooLargeToEnumerate(f"{host.num_vertices} vertices exceeds enumeration cap {cap}")
    forbidden = host.forbidden

    def rec(rest: list[int]) -> Iterator[list[Edge]]:
        if not rest:
            yield []
            return
        u = rest[0]
        for idx in range(1, len(rest)):
            e = (u, rest[idx])
            if e in forbidden:
                continue
            for tail in rec(rest[1:idx] + rest[idx + 1:]):
                yield [e] + tail

    return (tuple(m) for m in rec(list(range(host.num_vertices))))


def enumerate_balanced_pms(r: int, n: int, cap: int = BALANCED_ENUMERATION_CAP) -> Iterator[tuple[Edge, ...]]:
    """Yield every balanced perfect matching of ``K_{r x (r-1)n}`` once.

    Backtracks on the lowest unmatched vertex with a quota of ``n`` edges per
    pair of parts, so it does not share any logic with :func:`bpm_count`.
    """
    host = build_host(MULTIPARTITE, n, r)
    V = host.num_vertices
    if V > cap:
        raise TooLargeToEnumerate(f"{V} vertices exceeds balanced enumeration cap {cap}")
    part = [host.part_of(v) for v in range(V)]
    quota = {}
    for i in range(r):
        for j in range(i + 1, r):
            quota[(i, j)] = n
    matched = [False] * V
    chosen: list[Edge] = []

    def rec(start: int) -> Iterator[tuple[Edge, ...]]:
        u = start
        while u < V and matched[u]:
            u += 1
        if u == V:
            yield tuple(chosen)
            return
        matched[u] = True
        for v in range(u + 1, V):
            if matched[v] or part[v] == part[u]:
                continue
            key = (part[u], part[v])
            if quota[key] == 0:
                continue
            quota[key] -= 1
            matched[v] = True
            chosen.append((u, v))
            yield from rec(u + 1)
            chosen.pop()
            matched[v] = False
            quota[key] += 1
        matched[u] = False

    return rec(0)


def enumerate_host(host: HostGraph, cap: int | None = None) -> Iterator[tuple[Edge, ...]]:
    """Perfect matchings of a complete host, balanced ones of a multipartite host."""
    if host.kind == MULTIPARTITE:
        return enumerate_balanced_pms(host.r, host.n, BALANCED_ENUMERATION_CAP if cap is None else cap)
    return enumerate_perfect_matchings(host, PM_ENUMERATION_CAP if cap is None else cap)


def brute_force_pmf(family: SubgraphFamily, cap: int | None = None) -> JointPMF:
    """Exact law of ``(|R n D_m|)_m`` by enumerating the whole sample space."""
    ell = family.ell
    member_of: dict[Edge, tuple[int, ...]] = {}
    for m, member in enumerate(family.members):
        for e in member:
            member_of[e] = member_of.get(e, ()) + (m,)
    hist: Counter[tuple[int, ...]] = Counter()
    total = 0
    for matching in enumerate_host(family.host, cap):
        k = [0] * ell
        for e in matching:
            for m in member_of.get(e, ()):
                k[m] += 1
        hist[tuple(k)] += 1
        total += 1
    if total == 0:
        raise ModelError(f"{family.host.label()} has no perfect matching")
    return JointPMF(ell, {k: Fraction(c, total) for k, c in sorted(hist.items())})

