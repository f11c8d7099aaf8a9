from __future__ import annotations

import pytest

from gitquot.errors import BudgetExceeded
from gitquot.exact import pack_bits, rank
from gitquot.subspaces import (
    all_subspaces,
    canonical,
    count_subspaces,
    enumerate_subspaces,
    enumerate_subspaces_gf2,
    gaussian_binomial,
    superspaces,
)


@pytest.mark.parametrize("d,k,p,expected", [(3, 1, 2, 7), (4, 2, 2, 35), (3, 1, 3, 13), (4, 2, 3, 130), (5, 0, 2, 1)])
def test_gaussian_binomial_values(d, k, p, expected):
    assert gaussian_binomial(d, k, p) == expected


@pytest.mark.parametrize("d,p", [(3, 2), (4, 2), (3, 3), (2, 5)])
def test_enumeration_counts_and_uniqueness(d, p):
    for k in range(d + 1):
        subs = list(enumerate_subspaces(d, k, p))
        assert len(subs) == gaussian_binomial(d, k, p)
        assert len(set(subs)) == len(subs)
        for s in subs:
            assert len(s) == k and rank(s, p) == k
            assert canonical(s, d, p) == s
    assert sum(1 for _ in all_subspaces(d, p)) == count_subspaces(d, p)


def test_gf2_enumeration_same_order():
    for k in range(5):
        generic = [tuple(pack_bits(v) for v in s) for s in enumerate_subspaces(4, k, 2)]
        assert generic == list(enumerate_subspaces_gf2(4, k))


def test_budget_is_enforced():
    with pytest.raises(BudgetExceeded):
        list(enumerate_subspaces(6, 3, 3, budget=100))
    with pytest.raises(BudgetExceeded):
        list(enumerate_subspaces_gf2(8, 4, budget=10))


def test_superspaces_contain_and_count():
    sub = canonical([[1, 1, 0, 0]], 4, 2)
    sups = list(superspaces(sub, 4, 2, 2))
    assert len(sups) == gaussian_binomial(3, 1, 2)
    for s in sups:
        assert rank(list(s) + list(sub), 2) == 2
