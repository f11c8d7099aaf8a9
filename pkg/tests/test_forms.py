from __future__ import annotations

import random

from hypothesis import given, settings
from hypothesis import strategies as st

from gitquot.forms import (
    FormMatrix,
    HomForm,
    dim_forms,
    expanded_matrix,
    form_from_json,
    form_matrix_kernel,
    kernel_dimension,
    monomial_basis,
    multiply,
    pairing_matrix,
    pairing_orthogonal,
    vector_to_forms,
)
from gitquot.exact import rank

X, Y, Z = (HomForm.monomial(e) for e in [(1, 0, 0), (0, 1, 0), (0, 0, 1)])


def test_monomial_basis_order():
    assert monomial_basis(2, 2).monomials == ((2, 0, 0), (1, 1, 0), (1, 0, 1), (0, 2, 0), (0, 1, 1), (0, 0, 2))
    assert [len(monomial_basis(2, d)) for d in range(5)] == [1, 3, 6, 10, 15]
    assert dim_forms(3, 2) == 10 and dim_forms(2, -1) == 0


def test_difference_of_squares():
    f = (X + Y) * (X - Y)
    assert f == X * X - Y * Y
    assert f.degree == 2


def test_koszul_row():
    psi = FormMatrix([[X, Y, Z]])
    assert rank(expanded_matrix(psi, 1)) == 6
    assert kernel_dimension(psi, 1) == 3
    for v in form_matrix_kernel(psi, 1):
        f, g, h = vector_to_forms(v, 2, 1)
        assert (X * f + Y * g + Z * h).is_zero()


def test_json_roundtrip():
    f = X * Y + (Z * Z).scale(3)
    assert form_from_json(f.to_json(), 2, 2) == f
    M = FormMatrix([[X, Y], [Z, X + Y]])
    assert FormMatrix.from_json(M.to_json()) == M


def test_matmul_degrees_add():
    A = FormMatrix([[X, Y]])
    B = FormMatrix([[Y], [-X]])
    AB = A.matmul(B)
    assert AB.degree == 2 and AB.is_zero()


def _rand_form(rng, r, d, p=None):
    return HomForm(r, d, [rng.randint(-3, 3) for _ in range(dim_forms(r, d))], p)


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 3), st.integers(0, 3), st.integers(0, 3), st.integers(0, 10**6))
def test_product_commutative_associative(r, d, e, seed):
    rng = random.Random(seed)
    f, g, h = _rand_form(rng, r, d), _rand_form(rng, r, e), _rand_form(rng, r, 1)
    assert multiply(f, g) == multiply(g, f)
    assert (f * g) * h == f * (g * h)
    assert (f * (g + g)) == (f * g).scale(2)


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10**6), st.sampled_from([None, 2, 3]))
def test_kernel_rank_identity(seed, p):
    rng = random.Random(seed)
    rows, cols, e, d = rng.randint(1, 3), rng.randint(1, 3), rng.randint(1, 2), rng.randint(0, 2)
    psi = FormMatrix([[_rand_form(rng, 2, e, p) for _ in range(cols)] for _ in range(rows)], 2, e, p)
    M = expanded_matrix(psi, d)
    assert kernel_dimension(psi, d) == cols * dim_forms(2, d) - rank(M, p)
    assert len(form_matrix_kernel(psi, d)) == kernel_dimension(psi, d)


def test_pairing_is_symmetric():
    rng = random.Random(3)
    m, r, d, e = 2, 2, 1, 2
    f = [rng.randint(-2, 2) for _ in range(m * dim_forms(r, d))]
    g = [rng.randint(-2, 2) for _ in range(m * dim_forms(r, e))]
    Mf = pairing_matrix(f, m=m, r=r, degree=d, other_degree=e)
    Mg = pairing_matrix(g, m=m, r=r, degree=e, other_degree=d)
    fg = [sum(a * b for a, b in zip(row, g)) for row in Mf]
    gf = [sum(a * b for a, b in zip(row, f)) for row in Mg]
    assert fg == gf


def test_pairing_orthogonal_of_single_form():
    # f = (X, 0) in (S^1)^2 pairs with (S^1)^2 into S^2; orthogonal: second slot free
    f = [1, 0, 0, 0, 0, 0]
    orth = pairing_orthogonal([f], m=2, r=2, degree=1, other_degree=1)
    assert len(orth) == 3
