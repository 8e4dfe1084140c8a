from __future__ import annotations

import pytest

from oracles import balanced_count_formula, double_factorial_odd, matchings_of_host
from poissonmatch import (
    bpm_count,
    build_host,
    enumerate_balanced_pms,
    enumerate_perfect_matchings,
    falling,
    pma_count,
)
from poissonmatch.errors import TooLargeToEnumerate
from poissonmatch.graphs import is_balanced


def test_falling():
    assert falling(5, 0) == 1
    assert falling(5, 2) == 20
    assert falling(3, 4) == 0


@pytest.mark.parametrize("n", range(1, 7))
def test_pma_count(n):
    assert pma_count(n) == double_factorial_odd(n)


@pytest.mark.parametrize("n", range(1, 5))
def test_pm_enumeration_count(n):
    ms = list(enumerate_perfect_matchings(build_host("complete", n)))
    assert len(ms) == pma_count(n)
    assert len(set(ms)) == len(ms)


def test_bpm_examples():
    assert bpm_count(3, 1) == 8
    assert bpm_count(3, 2) == 1728
    assert bpm_count(2, 3) == 6


@pytest.mark.parametrize("r,n", [(2, 1), (2, 2), (2, 4), (3, 1), (3, 2), (4, 1)])
def test_bpm_count_formula_and_enumeration(r, n):
    assert bpm_count(r, n) == balanced_count_formula(r, n)
    host = build_host("multipartite", n, r=r)
    ms = list(enumerate_balanced_pms(r, n))
    assert len(ms) == bpm_count(r, n)
    assert len(set(ms)) == len(ms)
    assert all(is_balanced(host, m) for m in ms)


def test_balanced_enumeration_matches_filtered_pairings():
    host = build_host("multipartite", 2, r=3)
    ours = {frozenset(m) for m in enumerate_balanced_pms(3, 2)}
    assert ours == set(matchings_of_host(host))


def test_forbidden_enumeration():
    host = build_host("complete_minus", 3, forbidden=[(0, 1), (2, 3)])
    ours = {frozenset(m) for m in enumerate_perfect_matchings(host)}
    assert ours == set(matchings_of_host(host))


def test_caps_raise_eagerly():
    with pytest.raises(TooLargeToEnumerate):
        enumerate_perfect_matchings(build_host("complete", 9))
    with pytest.raises(TooLargeToEnumerate):
        enumerate_balanced_pms(3, 7)
