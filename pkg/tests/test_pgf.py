from __future__ import annotations

import math
from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from corpus import CORPUS, random_members
from oracles import oracle_pmf
from poissonmatch import (
    brute_force_pmf,
    build_host,
    build_pgf,
    conditional_pmf_avoiding,
    count_x_matchings,
    exact_pmf,
    extension_weight,
    pmf_from_pgf,
    series_from_pmf,
    validate_family,
    x_matching_counts,
)
from poissonmatch.errors import NegativeMass, ProfileOutOfRange, ProfileTooLarge, UnsupportedHost
from poissonmatch.pgf import pmf_from_series
from poissonmatch.pmf import JointPMF

K4 = build_host("complete", 2)
K6 = build_host("complete", 3)
K3x2 = build_host("multipartite", 1, r=3)
DISJOINT = [f for f in CORPUS if f.host.kind != "complete_minus"]


def fam(host, *members):
    return validate_family(host, [list(m) for m in members])


def test_count_x_matchings_examples():
    assert count_x_matchings(fam(K6, [(0, 1), (0, 2)]), (1,)) == 2
    assert count_x_matchings(fam(K6, [(0, 1), (0, 2)]), (2,)) == 0
    assert count_x_matchings(fam(K6, [(0, 1), (2, 3)]), (2,)) == 1
    assert count_x_matchings(fam(K6, [(0, 1), (2, 3)]), (0,)) == 1


def test_count_x_matchings_out_of_range():
    with pytest.raises(ProfileOutOfRange):
        count_x_matchings(fam(K6, [(0, 1)]), (2,))


def test_count_x_matchings_multipartite_nested():
    # members on pairs (a,b) and (b,c); profile given as nested rows
    f = fam(K3x2, [(0, 2), (3, 5)])
    assert count_x_matchings(f, [[1, 0, 1]]) == 1
    assert count_x_matchings(f, [[1, 0, 0]]) == 1
    with pytest.raises(ProfileOutOfRange):
        count_x_matchings(f, [[0, 1, 0]])


@pytest.mark.parametrize("family", DISJOINT, ids=lambda f: f.host.label())
def test_frontier_counts_match_backtracking(family):
    counts = x_matching_counts(family)
    bounds = []
    for m in range(family.ell):
        for p in range(family.shape.lam):
            bounds.append(sum(1 for slots in family.slots.values() if slots[0] == m * family.shape.lam + p))
    for x in product(*(range(b + 1) for b in bounds)):
        assert counts.get(x, 0) == count_x_matchings(family, x), x


def test_frontier_counts_dense_component():
    # a 4-cycle plus chords inside one member: one connected component
    h = build_host("complete", 4)
    f = fam(h, [(0, 1), (1, 2), (2, 3), (0, 3), (4, 5)], [(0, 2), (5, 6), (6, 7)])
    counts = x_matching_counts(f)
    for x in product(range(6), range(4)):
        expected = count_x_matchings(f, x) if x[0] <= 5 and x[1] <= 3 else 0
        assert counts.get(x, 0) == expected


def test_extension_weight_examples():
    assert extension_weight(K4, (1,)) == Fraction(1, 3)
    assert extension_weight(K4, (0,)) == 1
    assert extension_weight(K3x2, (1, 0, 0)) == Fraction(1, 4)
    assert extension_weight(K3x2, (0, 0, 0)) == 1


def test_extension_weight_matches_enumeration():
    assert oracle_pmf(K4, [[(0, 1)]])[(1,)] == extension_weight(K4, (1,))
    assert oracle_pmf(K3x2, [[(0, 2)]])[(1,)] == extension_weight(K3x2, (1, 0, 0))
    h = build_host("multipartite", 2, r=3)
    s = [(0, 4), (1, 8), (5, 9)]
    assert oracle_pmf(h, [s])[(3,)] == extension_weight(h, (1, 1, 1))


def test_extension_weight_boundaries():
    with pytest.raises(ProfileTooLarge):
        extension_weight(K4, (3,))
    with pytest.raises(ProfileTooLarge):
        extension_weight(K3x2, (2, 0, 0))
    with pytest.raises(UnsupportedHost):
        extension_weight(build_host("complete_minus", 2, forbidden=[(0, 1)]), (1,))


def test_build_pgf_examples():
    assert dict(build_pgf(fam(K4, [(0, 1)])).coeffs) == {(0,): 1, (1,): Fraction(1, 3)}
    coeffs = dict(build_pgf(fam(K6, [(0, 1), (2, 3)])).coeffs)
    assert coeffs == {(0,): 1, (1,): Fraction(2, 5), (2,): Fraction(1, 15)}
    assert dict(build_pgf(fam(K6, [])).coeffs) == {(0,): 1}


def test_pmf_examples():
    p = pmf_from_pgf(build_pgf(fam(K4, [(0, 1)])))
    assert p.mass == {(0,): Fraction(2, 3), (1,): Fraction(1, 3)}
    p = pmf_from_pgf(build_pgf(fam(K6, [(0, 1), (2, 3)])))
    assert p.mass == {(0,): Fraction(2, 3), (1,): Fraction(4, 15), (2,): Fraction(1, 15)}
    assert p.mass == oracle_pmf(K6, [[(0, 1), (2, 3)]])
    assert pmf_from_pgf(build_pgf(fam(K6, []))).mass == {(0,): 1}


def test_brute_force_examples():
    assert brute_force_pmf(fam(K4, [(0, 1)])).mass == {(0,): Fraction(2, 3), (1,): Fraction(1, 3)}
    assert brute_force_pmf(fam(K3x2, [(0, 2)])).mass == {(0,): Fraction(3, 4), (1,): Fraction(1, 4)}
    assert brute_force_pmf(fam(K3x2, [])).mass == {(0,): 1}


def test_negative_mass_detected():
    with pytest.raises(NegativeMass):
        pmf_from_series(1, {(0,): Fraction(1), (1,): Fraction(2)})


@pytest.mark.parametrize("family", CORPUS, ids=lambda f: f.host.label())
def test_oracle_equivalence(family):
    ours = exact_pmf(family)
    assert ours.exact
    assert ours.mass == brute_force_pmf(family).mass
    assert ours.mass == oracle_pmf(family.host, family.members)


@pytest.mark.parametrize("family", DISJOINT, ids=lambda f: f.host.label())
def test_normalization_and_evaluate(family):
    pgf = build_pgf(family)
    assert pgf.evaluate([1] * family.ell) == 1
    assert pmf_from_pgf(pgf).total() == 1
    s = [Fraction(1, 2 + m) for m in range(family.ell)]
    pmf = pmf_from_pgf(pgf)
    direct = sum(p * math.prod(si**km for si, km in zip(s, k)) for k, p in pmf.mass.items())
    assert pgf.evaluate(s) == direct


def _degrees_by_coordinate(family):
    counts = [0] * family.shape.size
    for slots in family.slots.values():
        for c in slots:
            counts[c] += 1
    return counts


@pytest.mark.parametrize("family", DISJOINT, ids=lambda f: f.host.label())
def test_mu_sandwich(family):
    d = _degrees_by_coordinate(family)
    C = family.max_degree
    for x, mu in x_matching_counts(family).items():
        t = sum(x)
        upper = math.prod(Fraction(dm**xm, math.factorial(xm)) for dm, xm in zip(d, x))
        lower = math.prod(Fraction(max(dm - 2 * C * t, 0) ** xm, math.factorial(xm)) for dm, xm in zip(d, x))
        assert lower <= mu <= upper


@pytest.mark.parametrize("family", DISJOINT, ids=lambda f: f.host.label())
def test_series_round_trip(family):
    pgf = build_pgf(family)
    pmf = pmf_from_pgf(pgf)
    assert series_from_pmf(pmf) == {x: a for x, a in pgf.by_psi1().items() if a}
    assert pmf_from_series(family.ell, series_from_pmf(pmf)).mass == pmf.mass


@settings(max_examples=40, deadline=None)
@given(st.dictionaries(st.tuples(st.integers(0, 3), st.integers(0, 3)), st.integers(1, 20), min_size=1, max_size=8))
def test_round_trip_arbitrary_law(weights):
    total = sum(weights.values())
    pmf = JointPMF(2, {k: Fraction(w, total) for k, w in weights.items()})
    assert pmf_from_series(2, series_from_pmf(pmf)).mass == pmf.mass


def test_conditional_examples():
    assert conditional_pmf_avoiding(2, [(0, 1)], [[(2, 3)]]).mass == {(0,): 1}
    assert conditional_pmf_avoiding(2, [(0, 1)], [[(0, 2)]]).mass == {(0,): Fraction(1, 2), (1,): Fraction(1, 2)}


@pytest.mark.parametrize("family", [f for f in CORPUS if f.host.kind == "complete"], ids=lambda f: f.host.label())
def test_conditional_on_empty_set_is_plain_pgf(family):
    cond = conditional_pmf_avoiding(family.host.n, [], family.members)
    assert cond.mass == pmf_from_pgf(build_pgf(family)).mass


@settings(max_examples=30, deadline=None)
@given(st.sampled_from([K6, build_host("complete", 4), build_host("multipartite", 2, r=3), build_host("multipartite", 3, r=2)]),
       st.integers(1, 3), st.integers(1, 3), st.randoms(use_true_random=False))
def test_oracle_equivalence_random(host, ell, cap, rnd):
    family = validate_family(host, random_members(rnd, host, ell, cap))
    assert pmf_from_pgf(build_pgf(family)).mass == oracle_pmf(host, family.members)


def test_overlapping_family_through_decomposition():
    f = validate_family(K6, [[(0, 1), (2, 3)], [(2, 3), (4, 5)]], disjoint_mode=False)
    assert exact_pmf(f).mass == oracle_pmf(K6, f.members)
    assert exact_pmf(f)[(2, 2)] == Fraction(1, 15)
