from __future__ import annotations

import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gitquot.exact import (
    ExactMatrix,
    binom,
    contains,
    format_rational,
    is_prime,
    kernel_basis,
    kernel_gf2,
    matmul,
    pack_bits,
    parse_rational,
    rank,
    rank_gf2,
    rref,
    row_space,
    scalar,
    unpack_bits,
)


def naive_rank(rows, p=None):
    """Textbook elimination with Fractions (or mod p), as an oracle."""
    A = [[Fraction(x) if p is None else x % p for x in r] for r in rows]
    rk, col = 0, 0
    ncols = len(A[0]) if A else 0
    while rk < len(A) and col < ncols:
        piv = next((i for i in range(rk, len(A)) if A[i][col] != 0), None)
        if piv is None:
            col += 1
            continue
        A[rk], A[piv] = A[piv], A[rk]
        for i in range(len(A)):
            if i != rk and A[i][col] != 0:
                if p is None:
                    f = A[i][col] / A[rk][col]
                    A[i] = [a - f * b for a, b in zip(A[i], A[rk])]
                else:
                    f = A[i][col] * pow(A[rk][col], -1, p) % p
                    A[i] = [(a - f * b) % p for a, b in zip(A[i], A[rk])]
        rk += 1
        col += 1
    return rk


def test_binom_edges():
    assert binom(5, 2) == 10
    assert binom(3, 5) == 0
    assert binom(4, -1) == 0
    assert binom(0, 0) == 1


def test_is_prime():
    assert [x for x in range(20) if is_prime(x)] == [2, 3, 5, 7, 11, 13, 17, 19]


def test_rationals_roundtrip():
    assert parse_rational("13/40") == Fraction(13, 40)
    assert parse_rational("-3") == -3
    assert format_rational(Fraction(6, 4)) == "3/2"
    assert format_rational(Fraction(4, 2)) == "2"
    with pytest.raises(TypeError):
        parse_rational(0.5)


def test_scalar_mod_p():
    assert scalar(Fraction(1, 2), 3) == 2
    assert scalar(-1, 5) == 4
    with pytest.raises(ZeroDivisionError):
        scalar(Fraction(1, 3), 3)


def test_rref_small_oracle():
    R, piv = rref([[2, 4, 6], [1, 2, 4]])
    assert piv == [0, 2]
    assert R == [[1, 2, 0], [0, 0, 1]]
    R, piv = rref([[1, 1], [1, 1]], 2)
    assert R == [[1, 1]] and piv == [0]


def test_kernel_basis_is_canonical():
    K = kernel_basis([[1, 2, 3]], 3)
    assert K == [[-2, 1, 0], [-3, 0, 1]]
    assert kernel_basis([[1, 1, 0]], 3, 2) == [[1, 1, 0], [0, 0, 1]]


@settings(max_examples=60, deadline=None)
@given(
    st.integers(1, 5),
    st.integers(1, 6),
    st.sampled_from([None, 2, 3, 5]),
    st.integers(0, 10**6),
)
def test_rank_nullity_and_oracle(nrows, ncols, p, seed):
    rng = random.Random(seed)
    rows = [[rng.randint(-3, 3) for _ in range(ncols)] for _ in range(nrows)]
    rk = rank(rows, p)
    assert rk == naive_rank(rows, p)
    K = kernel_basis(rows, ncols, p)
    assert rk + len(K) == ncols
    prod = matmul(rows, [list(col) for col in zip(*K)], p) if K else []
    assert all(x == 0 for r in prod for x in r)


@settings(max_examples=60, deadline=None)
@given(st.lists(st.lists(st.integers(0, 1), min_size=7, max_size=7), min_size=1, max_size=8))
def test_gf2_fast_path_matches_generic(rows):
    bits = [pack_bits(r) for r in rows]
    assert rank_gf2(bits) == naive_rank(rows, 2)
    K = kernel_gf2(bits, 7)
    assert len(K) == 7 - naive_rank(rows, 2)
    for v in K:
        vec = unpack_bits(v, 7)
        assert all(sum(a * b for a, b in zip(r, vec)) % 2 == 0 for r in rows)


def test_row_space_and_contains():
    S = row_space([[1, 0, 1], [0, 1, 1]], 2)
    assert contains(S, [[1, 1, 0]], 2)
    assert not contains(S, [[0, 0, 1]], 2)


def test_exact_matrix():
    A = ExactMatrix([[1, 2], [3, 4]], 2)
    I = ExactMatrix.identity(2)
    assert (A @ I).rows == A.rows
    assert A.rank() == 2
    assert ExactMatrix([[1, 1], [1, 1]], 2, 2).kernel_basis() == [[1, 1]]
    with pytest.raises(ValueError):
        ExactMatrix([[1, 2, 3]], 2)
