"""Reference computations written independently of the package internals."""

from __future__ import annotations

import math
from collections import Counter
from fractions import Fraction
from itertools import product


def all_pairings(items):
    """Every perfect pairing of ``items`` (plain recursion, no pruning)."""
    items = list(items)
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for idx, partner in enumerate(rest):
        remaining = rest[:idx] + rest[idx + 1:]
        for tail in all_pairings(remaining):
            yield [(first, partner)] + tail


def matchings_of_host(host):
    """All perfect matchings of a host, filtered from all pairings of its vertices."""
    out = []
    size = host.num_vertices
    for pairing in all_pairings(range(size)):
        edges = [tuple(sorted(e)) for e in pairing]
        if host.kind == "multipartite":
            part = [v // host.part_size for v in range(size)]
            if any(part[u] == part[v] for u, v in edges):
                continue
            pairs = Counter(tuple(sorted((part[u], part[v]))) for u, v in edges)
            if any(pairs[(i, j)] != host.n for i in range(host.r) for j in range(i + 1, host.r)):
                continue
        elif host.forbidden and any(e in host.forbidden for e in edges):
            continue
        out.append(frozenset(edges))
    return out


def oracle_pmf(host, members):
    """Exact joint law of ``(|M ∩ D_1|, ..., |M ∩ D_l|)`` by enumeration."""
    members = [frozenset(tuple(sorted(e)) for e in d) for d in members]
    matchings = matchings_of_host(host)
    hist = Counter(tuple(len(m & d) for d in members) for m in matchings)
    total = len(matchings)
    return {k: Fraction(c, total) for k, c in hist.items()}


def derangement_probability(n: int) -> Fraction:
    """``D_n / n!`` from ``D_n = (n-1)(D_{n-1} + D_{n-2})``."""
    d = [1, 0]
    for i in range(2, n + 1):
        d.append((i - 1) * (d[-1] + d[-2]))
    return Fraction(d[n], math.factorial(n))


def double_factorial_odd(n: int) -> int:
    """``(2n-1)!!``, the number of perfect matchings of ``K_2n``."""
    return math.prod(range(1, 2 * n, 2))


def balanced_count_formula(r: int, n: int) -> int:
    """Closed form ``((r-1)n)!^r / n!^{C(r,2)}``."""
    return math.factorial((r - 1) * n) ** r // math.factorial(n) ** (r * (r - 1) // 2)


def poisson_pmf(lam: float, k: int) -> float:
    return math.exp(-lam) * lam**k / math.factorial(k)


def independent_poisson_pmf(rates, cutoff: int):
    """Independent Poisson law on a box, no truncation bookkeeping."""
    out = {}
    for k in product(range(cutoff + 1), repeat=len(rates)):
        out[k] = math.prod(poisson_pmf(lam, c) for lam, c in zip(rates, k))
    return out
