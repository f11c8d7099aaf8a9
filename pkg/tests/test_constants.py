from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gitquot.constants import (
    ConstantQuery,
    column_rank,
    compute_k,
    eta1,
    eta2,
    kernel_bound_suite,
    koszul_kernel_dimension,
    left_kernel_dimension,
    qualifies,
    search_costs,
    plane_gap2_closed_forms,
    plane_gap2_constants,
    verify_74_witness,
    witness_matrices,
)
from gitquot.errors import BudgetExceeded
from gitquot.forms import dim_forms

# m2=3, d2=1, e=1, r=1; identical over F_2 and F_3
FROZEN = {
    "k(1,1)": 4, "k(1,2)": 4, "k(1,3)": 1, "k(1,4)": 0, "k(1,5)": 0, "k(1,6)": 0,
    "k(2,1)": 3, "k(2,2)": 0, "k(2,3)": 0, "k(2,4)": 0, "k(2,5)": 0, "k(2,6)": 0,
    "k(2)": 1, "k(3)": 3,
}


def _queries(m2, d2, e, r, p):
    a = dim_forms(r, e)
    qs = [ConstantQuery(m2, d2, e, r, i, j, p) for i in range(1, m2) for j in range(1, m2 * a + 1)]
    return qs + [ConstantQuery(m2, d2, e, r, i, None, p) for i in range(2, m2 + 1)]


def test_query_validation():
    with pytest.raises(ValueError):
        ConstantQuery(3, 1, 2, 2, 3, 1)
    with pytest.raises(ValueError):
        ConstantQuery(3, 1, 2, 2, 1, 19)
    with pytest.raises(ValueError):
        ConstantQuery(3, 1, 2, 2, 1)
    q = ConstantQuery(3, 1, 2, 2, 2)
    assert (q.name, q.ambient, q.support_floor, q.orth_floor) == ("k(2)", 2, 1, 1)
    q = ConstantQuery(3, 1, 2, 2, 2, 5)
    assert (q.name, q.source_dim, q.dual_dim) == ("k(2,5)", 9, 18)


@pytest.mark.parametrize("p", [2, 3])
def test_frozen_small_table(p):
    for q in _queries(3, 1, 1, 1, p):
        assert compute_k(q, budget=10**6).value == FROZEN[q.name], q.name


@pytest.mark.parametrize("p,shapes", [(2, [(2, 2, 1, 1), (3, 1, 1, 1)]), (3, [(2, 2, 1, 1), (2, 1, 1, 1)])])
def test_both_routes_agree(p, shapes):
    for q in [q for s in shapes for q in _queries(*s, p)]:
        s = compute_k(q, "source", budget=10**6)
        o = compute_k(q, "orthogonal", budget=10**6)
        assert s.value == o.value
        for res in (s, o):
            if res.value:
                assert len(res.witness) == res.value and qualifies(q, res.witness)


def test_monotone_in_j():
    vals = [FROZEN[f"k(1,{j})"] for j in range(1, 7)]
    assert vals == sorted(vals, reverse=True)


def test_budget_and_costs():
    q = ConstantQuery(3, 1, 2, 2, 2, 5)
    costs = search_costs(q)
    assert costs["source"] < costs["orthogonal"]
    with pytest.raises(BudgetExceeded):
        compute_k(q, budget=100)
    with pytest.raises(ValueError):
        compute_k(ConstantQuery(2, 1, 1, 1, 1, 1), method="sideways")


def test_k2_plane_gap2_d1():
    q = ConstantQuery(3, 1, 2, 2, 2)
    assert compute_k(q, budget=None).value == 1


def test_k111_plane_gap2_d1():
    q = ConstantQuery(3, 1, 2, 2, 1, 11)
    res = compute_k(q, budget=None)
    assert res.value == 0 and res.witness is None


def test_closed_forms():
    assert plane_gap2_closed_forms(1) == {"k(1,11)": 0, "k(2,5)": 1, "k(2)": 1, "k(3)": 4, "k(1,7)": 1, "k(2,1)": 4}
    assert plane_gap2_closed_forms(3)["k(3)"] == 16


def test_plane_gap2_statuses_for_larger_d():
    table = plane_gap2_constants(3)
    assert table["k(2,5)"].status == "lower-bound" and table["k(2,5)"].value == 6
    assert {v.status for k, v in table.items() if k != "k(2,5)"} == {"assumed"}


@pytest.mark.parametrize("d", [1, 2, 3, 4])
def test_witness(d):
    rep = verify_74_witness(d)
    assert rep.ok and rep.lower_bound == (d + 1) * d // 2
    assert len(witness_matrices(d)) >= 1


def test_kernel_suite():
    rep = kernel_bound_suite(2, trials=10, seed=1)
    assert rep.ok
    assert rep.sections["zero_column_shape"]["max"] == 4
    assert koszul_kernel_dimension(1) == 3
    assert left_kernel_dimension(eta1(), 1) == 1
    assert left_kernel_dimension(eta1(), 2) == 3


def test_column_rank_example():
    assert column_rank(eta2([1] * 10)) == 3


@settings(max_examples=20, deadline=None)
@given(st.integers(1, 2), st.sampled_from([2, 3]))
def test_value_bounded_by_source_dim(i, p):
    q = ConstantQuery(3, 1, 1, 1, i, 1, p)
    res = compute_k(q, budget=10**6)
    assert 0 <= res.value <= q.source_dim
