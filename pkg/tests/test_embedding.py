from __future__ import annotations

import random
from fractions import Fraction as F

import pytest

from gitquot.embedding import (
    check_reduced,
    division_matrix,
    embed,
    omega,
    omega_closed_form,
    omega_recount,
    reduced_cases,
    tilde_decide,
    verify_zero_block_remarks,
)
from gitquot.errors import GateFailure, UnsupportedShape
from gitquot.king import STABLE, UNSTABLE, decide_semistable
from gitquot.morphisms import Morphism, MorphismType, Polarization, TildePolarization, construct_semistable


def test_shapes_21():
    T = MorphismType.of(2, (3, 2), (1, 2), 4)
    E = embed(Morphism.random(T, 2, random.Random(0)))
    assert E.p1 == 1 + 2 * 3 and E.gamma.nrows == 4 and E.gamma.degree == 3
    assert (E.xi.nrows, E.xi.ncols, E.xi.degree) == (7, 2, 1)
    # the first m1 rows of xi vanish, each column carries X0, X1, X2 once
    assert all(e.is_zero() for row in E.xi.entries[:1] for e in row)
    assert sum(not e.is_zero() for row in E.xi.entries for e in row) == 6


def test_shapes_31():
    T = MorphismType.of(2, (3, 2, 1), (1, 1, 1), 7)
    E = embed(Morphism.random(T, 2, random.Random(0)))
    assert E.p1 == 1 + 3 + 6
    assert (E.xi2.nrows, E.xi2.ncols) == (10, 4) and (E.xi3.nrows, E.xi3.ncols) == (4, 1)
    assert E.gamma.ncols == 10


def test_omega_table():
    assert omega_closed_form(2, 1) == 5
    assert omega_recount(division_matrix(2, 2, 1)) == 5
    assert omega(MorphismType.of(1, (4, 2, 1), (1, 1, 1), 9)) == (4, 4)
    with pytest.raises(ValueError):
        omega_recount(division_matrix(2, 1, 0))


def test_zero_block_remarks():
    T = MorphismType.of(2, (3, 2, 1), (1, 1, 1), 7)
    rep = verify_zero_block_remarks(T, 2, trials=300, seed=1)
    assert rep.ok
    assert [r["columns"] for r in rep.rows] == [1, 2, 3]
    assert rep.rows[0]["bounds"] == {"single column": 3}


def test_gate_failure():
    T = MorphismType.of(2, (3, 2), (1, 1), 3)
    E = embed(construct_semistable(T))
    TP = TildePolarization.from_polarization(T, Polarization.from_lambda1(T, F(1, 2)))
    with pytest.raises(GateFailure):
        check_reduced(E, TP, 2)
    with pytest.raises(GateFailure):
        tilde_decide(E, TP, 2)


def test_construction_tilde_stable():
    T = MorphismType.of(2, (3, 2), (1, 1), 3)
    E = embed(construct_semistable(T))
    TP = TildePolarization.from_polarization(T, Polarization.from_lambda1(T, F(1, 6)))
    full = tilde_decide(E, TP, 2)
    assert full.status == STABLE and full.slack > 0
    assert check_reduced(E, TP, 2).status == STABLE


def test_zero_gamma_unstable():
    T = MorphismType.of(1, (2, 1), (1, 1), 2)
    E = embed(Morphism.zero(T, 2))
    TP = TildePolarization.from_polarization(T, Polarization.from_lambda1(T, F(1, 8)))
    assert tilde_decide(E, TP, 2).status == UNSTABLE
    assert check_reduced(E, TP, 2).status == UNSTABLE


def test_reduced_case_list():
    T = MorphismType.of(1, (2, 1), (1, 1), 2)
    TP = TildePolarization.from_polarization(T, Polarization.from_lambda1(T, F(1, 8)))
    ks = [k for _, k, _ in reduced_cases(T, TP)]
    assert ks == [0, 1, 2, 3]
    with pytest.raises(UnsupportedShape):
        reduced_cases(MorphismType.of(1, (3, 2, 1), (1, 2, 1), 3), TP)


@pytest.mark.parametrize("seed", [0, 1])
def test_reduced_agrees_with_full_and_implies_king(seed):
    rng = random.Random(seed)
    T = MorphismType.of(1, (2, 1), (1, 2), 3)
    for _ in range(25):
        phi = Morphism.random(T, 2, rng, density=rng.choice([0.3, 0.7]))
        P = Polarization.from_lambda1(T, F(1, 12))
        TP = TildePolarization.from_polarization(T, P)
        E = embed(phi)
        full, red = tilde_decide(E, TP, 2), check_reduced(E, TP, 2)
        assert full.semistable == red.semistable
        if full.semistable:
            assert decide_semistable(phi, P, 2).semistable
