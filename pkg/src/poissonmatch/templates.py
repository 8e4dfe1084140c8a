"""Canonical families generated from ``n`` for convergence sweeps.

All templates keep the member degree bounded independently of ``n``.
"""

from __future__ import annotations

from .errors import ModelError
from .graphs import COMPLETE, MULTIPARTITE, Edge, SubgraphFamily, build_host, validate_family

TEMPLATES = ("perfect-matching", "two-disjoint-matchings", "balanced-pm")


def canonical_perfect_matching(n: int) -> list[Edge]:
    return [(2 * i, 2 * i + 1) for i in range(n)]


def canonical_balanced_pm(r: int, n: int) -> list[Edge]:
    """Balanced perfect matching of ``K_{r x (r-1)n}`` pairing matching block positions.

    Part ``i`` reserves its ``t``-th block of ``n`` vertices for the ``t``-th
    other part, in increasing order.
    """
    size = (r - 1) * n
    out = []
    for i in range(r):
        for j in range(i + 1, r):
            bi = j - 1  # block of part i reserved for j (j > i)
            bj = i  # block of part j reserved for i (i < j)
            for t in range(n):
                out.append((i * size + bi * n + t, j * size + bj * n + t))
    return sorted(out)


def template_family(name: str, n: int, r: int | None = None) -> SubgraphFamily:
    if name == "perfect-matching":
        return validate_family(build_host(COMPLETE, n), [canonical_perfect_matching(n)])
    if name == "two-disjoint-matchings":
        if n < 2:
            raise ModelError("two-disjoint-matchings needs n >= 2")
        second = [(2 * i + 1, (2 * i + 2) % (2 * n)) for i in range(n)]
        return validate_family(build_host(COMPLETE, n), [canonical_perfect_matching(n), second])
    if name == "balanced-pm":
        r = 2 if r is None else r
        host = build_host(MULTIPARTITE, n, r)
        return validate_family(host, [canonical_balanced_pm(r, n)])
    raise ModelError(f"unknown template {name!r}; expected one of {TEMPLATES}")
