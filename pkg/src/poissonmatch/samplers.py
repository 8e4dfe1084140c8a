"""Exactly uniform samplers and the Monte Carlo harness."""

from __future__ import annotations

from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from typing import Iterable

from .errors import ModelError, RejectionBudgetExceeded
from .graphs import COMPLETE_MINUS, MULTIPARTITE, Edge, HostGraph, SubgraphFamily
from .pmf import JointPMF, from_counts
from .rng import SeededGenerator

REJECTION_CAP = 1_000_000
CHUNK_SIZE = 10_000


def _uniform_pairing(num_vertices: int, gen: SeededGenerator) -> list[Edge]:
    rest = list(range(num_vertices))
    out = []
    while rest:
        u = rest.pop(0)
        v = rest.pop(gen.randbelow(len(rest)))
        out.append((u, v))
    return out


def sample_pm(host: HostGraph, gen: SeededGenerator, max_attempts: int | None = None) -> tuple[Edge, ...]:
    """Uniform perfect matching of ``K_2n`` or, by rejection, of ``K_2n - N``.

    The lowest unmatched vertex is paired with a uniformly chosen unmatched
    partner until every vertex is covered.
    """
    if host.kind == MULTIPARTITE:
        raise ModelError("use sample_balanced_pm for multipartite hosts")
    if host.kind != COMPLETE_MINUS or not host.forbidden:
        return tuple(_uniform_pairing(host.num_vertices, gen))
    if max_attempts is None:
        max_attempts = REJECTION_CAP
    forbidden = host.forbidden
    for _ in range(max_attempts):
        m = _uniform_pairing(host.num_vertices, gen)
        if not any(e in forbidden for e in m):
            return tuple(m)
    raise RejectionBudgetExceeded(f"no draw avoided the forbidden set in {max_attempts} attempts")


def sample_balanced_pm(r: int, n: int, gen: SeededGenerator) -> tuple[Edge, ...]:
    """Uniform balanced perfect matching of ``K_{r x (r-1)n}``.

    Each part is shuffled and cut into consecutive blocks of ``n``, block
    ``j`` of part ``i`` being reserved for partners in part ``j``.  Matching
    block ``(i, j)`` to block ``(j, i)`` position by position is a uniform
    bijection because the order inside each block is already uniform.
    Every balanced matching has exactly one such encoding.
    """
    size = (r - 1) * n
    blocks: dict[tuple[int, int], list[int]] = {}
    for i in range(r):
        perm = gen.permutation(range(i * size, (i + 1) * size))
        others = [j for j in range(r) if j != i]
        for slot, j in enumerate(others):
            blocks[(i, j)] = perm[slot * n:(slot + 1) * n]
    out = []
    for i in range(r):
        for j in range(i + 1, r):
            out.extend(zip(blocks[(i, j)], blocks[(j, i)]))
    out.sort()
    return tuple(out)


def sample_host(host: HostGraph, gen: SeededGenerator) -> tuple[Edge, ...]:
    if host.kind == MULTIPARTITE:
        return sample_balanced_pm(host.r, host.n, gen)
    return sample_pm(host, gen)


def _chunk_counts(family: SubgraphFamily, seed: int, stream: int, count: int) -> tuple[dict, int]:
    gen = SeededGenerator(seed, stream)
    host = family.host
    member_of: dict[Edge, tuple[int, ...]] = {}
    for m, member in enumerate(family.members):
        for e in member:
            member_of[e] = member_of.get(e, ()) + (m,)
    check_balance = host.kind == MULTIPARTITE
    if check_balance:
        V = host.num_vertices
        part = [host.part_of(v) for v in range(V)]
        expected = {(i, j): host.n for i in range(host.r) for j in range(i + 1, host.r)}
    forbidden = host.forbidden
    hist: Counter = Counter()
    for _ in range(count):
        matching = sample_host(host, gen)
        if check_balance:
            pairs = Counter((part[u], part[v]) for u, v in matching)
            covered = {w for e in matching for w in e}
            if pairs != expected or len(covered) != V:
                raise AssertionError(f"unbalanced sample {matching}")
        if forbidden and any(e in forbidden for e in matching):
            raise AssertionError(f"sample {matching} uses a forbidden edge")
        k = [0] * family.ell
        for e in matching:
            for m in member_of.get(e, ()):
                k[m] += 1
        hist[tuple(k)] += 1
    return dict(hist), count


def _chunks(samples: int, chunk: int) -> list[tuple[int, int]]:
    out = []
    stream = 0
    left = samples
    while left > 0:
        take = min(chunk, left)
        out.append((stream, take))
        stream += 1
        left -= take
    return out


def mc_counts(
    family: SubgraphFamily, samples: int, seed: int, workers: int = 1, chunk: int = CHUNK_SIZE
) -> tuple[Counter, int]:
    """Histogram of intersection vectors over ``samples`` independent draws.

    Draws are split into chunks of ``chunk``; chunk ``t`` always uses stream
    ``t``, so the histogram does not depend on ``workers``.  Returns the
    histogram and the number of samples that passed validation.
    """
    if samples < 1:
        raise ModelError("samples must be at least 1")
    if workers < 1:
        raise ModelError("workers must be at least 1")
    jobs = _chunks(samples, chunk)
    total: Counter = Counter()
    checked = 0
    if workers == 1 or len(jobs) == 1:
        results: Iterable = (_chunk_counts(family, seed, s, c) for s, c in jobs)
        for hist, ok in results:
            total.update(hist)
            checked += ok
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            futures = [pool.submit(_chunk_counts, family, seed, s, c) for s, c in jobs]
            for f in futures:
                hist, ok = f.result()
                total.update(hist)
                checked += ok
    return total, checked


def mc_pmf(family: SubgraphFamily, samples: int, seed: int, workers: int = 1, chunk: int = CHUNK_SIZE) -> JointPMF:
    """Empirical law of the intersection vector; reproducible for a fixed seed."""
    hist, _ = mc_counts(family, samples, seed, workers, chunk)
    return from_counts(family.ell, hist)

