"""Host graphs, subgraph families, decompositions and intersection profiles.

Vertices are the integers ``0 .. V-1``.  Edges are canonical pairs ``(u, v)``
with ``u < v``.  A multipartite host ``K_{r x (r-1)n}`` stores its parts as
contiguous blocks of ``(r-1)n`` vertices, so part lookup is a division.

Profiles are stored flat: coordinate ``m * lam + p`` counts edges of member
``m`` lying between the ``p``-th pair of parts (``lam = 1`` for complete
hosts, ``lam = C(r, 2)`` for multipartite ones).
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from typing import Iterable, Sequence

import networkx as nx

from .errors import (
    EdgeInForbiddenSet,
    EdgeOutOfHost,
    FamilyTooLarge,
    ForbiddenTooDense,
    InvalidPartition,
    MalformedEdge,
    ModelError,
    OverlapInDisjointMode,
)

COMPLETE = "complete"
COMPLETE_MINUS = "complete_minus"
MULTIPARTITE = "multipartite"
KINDS = (COMPLETE, COMPLETE_MINUS, MULTIPARTITE)

MAX_FAMILY_SIZE = 16
SPARSE_DEGREE_WARNING = 8

Edge = tuple[int, int]


def canonical_edge(u, v) -> Edge:
    """Return ``(min, max)`` after checking both ends are distinct integers."""
    if isinstance(u, bool) or isinstance(v, bool) or not isinstance(u, int) or not isinstance(v, int):
        raise MalformedEdge(f"edge endpoints must be integers, got ({u!r}, {v!r})")
    if u == v:
        raise MalformedEdge(f"loop ({u}, {v}) is not an edge")
    return (u, v) if u < v else (v, u)


def _parse_edges(edges: Iterable) -> frozenset[Edge]:
    out = set()
    for e in edges:
        try:
            u, v = e
        except (TypeError, ValueError):
            raise MalformedEdge(f"edge must be a pair, got {e!r}") from None
        out.add(canonical_edge(u, v))
    return frozenset(out)


def max_degree(edges: Iterable[Edge]) -> int:
    deg: dict[int, int] = {}
    for u, v in edges:
        deg[u] = deg.get(u, 0) + 1
        deg[v] = deg.get(v, 0) + 1
    return max(deg.values(), default=0)


@dataclass(frozen=True)
class ProfileShape:
    """Index layout of an intersection profile: ``ell`` members by ``lam`` part pairs."""

    ell: int
    r: int | None = None

    @property
    def lam(self) -> int:
        return 1 if self.r is None else self.r * (self.r - 1) // 2

    @property
    def size(self) -> int:
        return self.ell * self.lam

    @cached_property
    def pairs(self) -> tuple[tuple[int, int], ...]:
        if self.r is None:
            return ((0, 0),)
        return tuple(combinations(range(self.r), 2))

    def zero(self) -> tuple[int, ...]:
        return (0,) * self.size

    def psi1(self, x: Sequence[int]) -> tuple[int, ...]:
        lam = self.lam
        return tuple(sum(x[m * lam:(m + 1) * lam]) for m in range(self.ell))

    def psi2(self, x: Sequence[int]) -> tuple[int, ...]:
        if self.r is None:
            raise ModelError("per-part totals only exist for multipartite profiles")
        lam = self.lam
        out = [0] * self.r
        for m in range(self.ell):
            for p, (i, j) in enumerate(self.pairs):
                c = x[m * lam + p]
                out[i] += c
                out[j] += c
        return tuple(out)

    def psi3(self, x: Sequence[int]) -> tuple[int, ...]:
        lam = self.lam
        return tuple(sum(x[m * lam + p] for m in range(self.ell)) for p in range(lam))

    def flatten(self, x) -> tuple[int, ...]:
        """Accept a flat tuple, an ``ell``-vector (complete) or ``ell`` rows of ``lam``."""
        if isinstance(x, IntersectionProfile):
            x = x.counts
        x = list(x)
        if x and isinstance(x[0], (list, tuple)):
            if len(x) != self.ell or any(len(row) != self.lam for row in x):
                raise ModelError(f"profile rows do not match shape {self.ell}x{self.lam}")
            x = [c for row in x for c in row]
        if len(x) != self.size:
            raise ModelError(f"profile has {len(x)} entries, expected {self.size}")
        if any((not isinstance(c, int)) or c < 0 for c in x):
            raise ModelError("profile entries must be nonnegative integers")
        return tuple(x)


@dataclass(frozen=True)
class HostGraph:
    kind: str
    n: int
    r: int | None = None
    forbidden: frozenset[Edge] = frozenset()

    @property
    def num_vertices(self) -> int:
        if self.kind == MULTIPARTITE:
            return self.r * (self.r - 1) * self.n
        return 2 * self.n

    @property
    def part_size(self) -> int:
        if self.kind != MULTIPARTITE:
            raise ModelError("only multipartite hosts have parts")
        return (self.r - 1) * self.n

    @property
    def degree(self) -> int:
        """Degree of the underlying complete (multipartite) graph."""
        if self.kind == MULTIPARTITE:
            return (self.r - 1) ** 2 * self.n
        return 2 * self.n - 1

    @property
    def poisson_denominator(self) -> int:
        """``2n`` for complete hosts, ``(r-1)^2 n`` for multipartite ones."""
        if self.kind == MULTIPARTITE:
            return (self.r - 1) ** 2 * self.n
        return 2 * self.n

    def part_of(self, v: int) -> int:
        return v // self.part_size

    def part_vertices(self, i: int) -> range:
        s = self.part_size
        return range(i * s, (i + 1) * s)

    def shape(self, ell: int) -> ProfileShape:
        return ProfileShape(ell, self.r if self.kind == MULTIPARTITE else None)

    @cached_property
    def _pair_lookup(self) -> dict[tuple[int, int], int]:
        return {ij: p for p, ij in enumerate(combinations(range(self.r), 2))}

    def pair_index(self, i: int, j: int) -> int:
        if i > j:
            i, j = j, i
        return self._pair_lookup[(i, j)]

    def edge_slot(self, e: Edge) -> int:
        """Part-pair index of an edge (always 0 on complete hosts)."""
        if self.kind != MULTIPARTITE:
            return 0
        return self.pair_index(self.part_of(e[0]), self.part_of(e[1]))

    def check_edge(self, e: Edge) -> None:
        u, v = e
        if not (0 <= u < v < self.num_vertices):
            raise EdgeOutOfHost(f"edge {e} outside vertex range [0, {self.num_vertices})")
        if self.kind == MULTIPARTITE and self.part_of(u) == self.part_of(v):
            raise EdgeOutOfHost(f"edge {e} joins two vertices of part {self.part_of(u)}")
        if e in self.forbidden:
            raise EdgeInForbiddenSet(f"edge {e} lies in the forbidden set")

    def label(self) -> str:
        if self.kind == MULTIPARTITE:
            return f"K_{{{self.r}x{self.part_size}}}"
        if self.kind == COMPLETE_MINUS:
            return f"K_{2 * self.n}-N"
        return f"K_{2 * self.n}"

    def to_json(self) -> dict:
        out: dict = {"kind": self.kind, "n": self.n}
        if self.kind == MULTIPARTITE:
            out["r"] = self.r
        if self.kind == COMPLETE_MINUS:
            out["forbidden"] = [list(e) for e in sorted(self.forbidden)]
        return out


def build_host(kind: str, n: int, r: int | None = None, forbidden: Iterable | None = None) -> HostGraph:
    """Validate parameters and return a host with at least one perfect matching."""
    if kind not in KINDS:
        raise ModelError(f"unknown host kind {kind!r}; expected one of {KINDS}")
    if isinstance(n, bool) or not isinstance(n, int) or n < 1:
        raise ModelError(f"n must be a positive integer, got {n!r}")
    if kind == MULTIPARTITE:
        if isinstance(r, bool) or not isinstance(r, int) or r < 2:
            raise InvalidPartition(f"multipartite host needs an integer r >= 2, got {r!r}")
        if forbidden:
            raise ModelError("forbidden edges are only meaningful for complete_minus hosts")
        return HostGraph(MULTIPARTITE, n, r)
    if r is not None:
        raise ModelError("r is only meaningful for multipartite hosts")
    if kind == COMPLETE:
        if forbidden:
            raise ModelError("use kind 'complete_minus' to forbid edges")
        return HostGraph(COMPLETE, n)

    forb = _parse_edges(forbidden or ())
    for u, v in forb:
        if not (0 <= u < v < 2 * n):
            raise MalformedEdge(f"forbidden edge {(u, v)} outside vertex range [0, {2 * n})")
    delta = max_degree(forb)
    if delta >= 2 * n - 1:
        raise ForbiddenTooDense(f"forbidden set isolates a vertex (max degree {delta}, n={n})")
    # Complement min degree >= n guarantees a Hamiltonian cycle, hence a perfect matching.
    if delta >= n and not _has_perfect_matching(2 * n, forb):
        raise ForbiddenTooDense(f"K_{2 * n} minus the forbidden set has no perfect matching")
    return HostGraph(COMPLETE_MINUS, n, None, forb)


def _has_perfect_matching(num_vertices: int, forbidden: frozenset[Edge]) -> bool:
    g = nx.complete_graph(num_vertices)
    g.remove_edges_from(forbidden)
    return 2 * len(nx.max_weight_matching(g, maxcardinality=True)) == num_vertices


@dataclass(frozen=True)
class SubgraphFamily:
    host: HostGraph
    members: tuple[frozenset[Edge], ...]
    disjoint: bool
    d: tuple[int, ...] = field(compare=False)
    max_degree: int = field(compare=False)
    dcube: tuple[tuple[int, ...], ...] = field(compare=False)

    @property
    def ell(self) -> int:
        return len(self.members)

    @property
    def shape(self) -> ProfileShape:
        return self.host.shape(self.ell)

    @cached_property
    def slots(self) -> dict[Edge, tuple[int, ...]]:
        """Map each family edge to the flat profile coordinates it increments."""
        lam = self.shape.lam
        out: dict[Edge, list[int]] = {}
        for m, member in enumerate(self.members):
            for e in member:
                out.setdefault(e, []).append(m * lam + self.host.edge_slot(e))
        return {e: tuple(v) for e, v in out.items()}

    @cached_property
    def union(self) -> frozenset[Edge]:
        return frozenset().union(*self.members)

    def is_pairwise_disjoint(self) -> bool:
        return sum(self.d) == len(self.union)

    def to_json(self) -> list:
        return [[list(e) for e in sorted(member)] for member in self.members]


def validate_family(host: HostGraph, members: Sequence[Iterable], disjoint_mode: bool = True) -> SubgraphFamily:
    """Canonicalize and check the member edge sets against ``host``.

    With ``disjoint_mode`` the members must be pairwise edge-disjoint, as the
    generating-function engine requires.  The maximum degree is computed
    over each member separately; values above 8 only trigger a warning.
    """
    members = list(members)
    if not members:
        raise ModelError("a family needs at least one member")
    if len(members) > MAX_FAMILY_SIZE:
        raise FamilyTooLarge(f"at most {MAX_FAMILY_SIZE} members supported, got {len(members)}")
    parsed = tuple(_parse_edges(m) for m in members)
    for member in parsed:
        for e in member:
            host.check_edge(e)
    if disjoint_mode:
        seen: dict[Edge, int] = {}
        for m, member in enumerate(parsed):
            for e in member:
                if e in seen:
                    raise OverlapInDisjointMode(f"edge {e} lies in members {seen[e] + 1} and {m + 1}")
                seen[e] = m
    shape = host.shape(len(parsed))
    cube = [[0] * shape.lam for _ in parsed]
    for m, member in enumerate(parsed):
        for e in member:
            cube[m][host.edge_slot(e)] += 1
    cdeg = max((max_degree(member) for member in parsed), default=0)
    if cdeg > SPARSE_DEGREE_WARNING:
        warnings.warn(
            f"family max degree {cdeg} exceeds {SPARSE_DEGREE_WARNING}; Poisson limits assume bounded degree",
            stacklevel=2,
        )
    return SubgraphFamily(
        host=host,
        members=parsed,
        disjoint=disjoint_mode,
        d=tuple(len(member) for member in parsed),
        max_degree=cdeg,
        dcube=tuple(tuple(row) for row in cube),
    )


@dataclass(frozen=True)
class Decomposition:
    """Pieces ``D_S`` for every nonempty subset ``S`` of member indices.

    Subsets are ordered by bitmask ``1 .. 2^ell - 1`` and hold 0-based
    member indices.
    """

    family: SubgraphFamily
    subsets: tuple[frozenset[int], ...]
    pieces: tuple[frozenset[Edge], ...]

    def piece(self, subset: Iterable[int]) -> frozenset[Edge]:
        return self.pieces[_mask(subset) - 1]

    def as_family(self) -> SubgraphFamily:
        return validate_family(self.family.host, self.pieces, disjoint_mode=True)

    def sizes(self) -> tuple[int, ...]:
        return tuple(len(p) for p in self.pieces)


def _mask(subset: Iterable[int]) -> int:
    out = 0
    for m in subset:
        out |= 1 << m
    return out


def decompose_family(family: SubgraphFamily) -> Decomposition:
    ell = family.ell
    buckets: list[set[Edge]] = [set() for _ in range(2 ** ell - 1)]
    for e in family.union:
        mask = _mask(m for m, member in enumerate(family.members) if e in member)
        buckets[mask - 1].add(e)
    subsets = tuple(frozenset(m for m in range(ell) if mask >> m & 1) for mask in range(1, 2 ** ell))
    return Decomposition(family, subsets, tuple(frozenset(b) for b in buckets))


@dataclass(frozen=True)
class IntersectionProfile:
    shape: ProfileShape
    counts: tuple[int, ...]

    @property
    def psi1(self) -> tuple[int, ...]:
        return self.shape.psi1(self.counts)

    @property
    def psi2(self) -> tuple[int, ...]:
        return self.shape.psi2(self.counts)

    @property
    def psi3(self) -> tuple[int, ...]:
        return self.shape.psi3(self.counts)

    @property
    def total(self) -> int:
        return sum(self.counts)

    def entry(self, m: int, i: int = 0, j: int = 1) -> int:
        """Count for member ``m`` between parts ``i`` and ``j`` (0-based, symmetric)."""
        if self.shape.r is None:
            return self.counts[m]
        lam = self.shape.lam
        if i > j:
            i, j = j, i
        return self.counts[m * lam + self.shape.pairs.index((i, j))]

    def rows(self) -> list[list[int]]:
        lam = self.shape.lam
        return [list(self.counts[m * lam:(m + 1) * lam]) for m in range(self.shape.ell)]


def intersect_profile(matching: Iterable[Edge], family: SubgraphFamily) -> IntersectionProfile:
    """Count how many matching edges fall in each member (and part pair)."""
    shape = family.shape
    counts = [0] * shape.size
    slots = family.slots
    for e in matching:
        for c in slots.get(e, ()):
            counts[c] += 1
    return IntersectionProfile(shape, tuple(counts))


def is_matching(edges: Iterable[Edge]) -> bool:
    seen: set[int] = set()
    for u, v in edges:
        if u in seen or v in seen or u == v:
            return False
        seen.add(u)
        seen.add(v)
    return True


def is_perfect_matching(host: HostGraph, edges: Sequence[Edge]) -> bool:
    if len(edges) * 2 != host.num_vertices or not is_matching(edges):
        return False
    try:
        for e in edges:
            host.check_edge(e)
    except ModelError:
        return False
    return True


def pair_counts(host: HostGraph, edges: Iterable[Edge]) -> list[int]:
    counts = [0] * host.shape(1).lam
    for e in edges:
        counts[host.edge_slot(e)] += 1
    return counts


def is_balanced(host: HostGraph, edges: Sequence[Edge]) -> bool:
    """Perfect matching with exactly ``n`` edges between every pair of parts."""
    return is_perfect_matching(host, edges) and all(c == host.n for c in pair_counts(host, edges))
