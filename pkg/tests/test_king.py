from __future__ import annotations

import random
from fractions import Fraction as F
from itertools import product

import pytest

from gitquot.king import (
    PROPERLY_SEMISTABLE,
    STABLE,
    UNSTABLE,
    block_form_reachable,
    block_form_status,
    decide_semistable,
    min_image_dim,
)
from gitquot.morphisms import Morphism, MorphismType, Polarization, chambers, construct_semistable


def naive_rank(rows, p):
    rows = [list(r) for r in rows]
    rank, col = 0, 0
    ncols = len(rows[0]) if rows else 0
    while rank < len(rows) and col < ncols:
        piv = next((i for i in range(rank, len(rows)) if rows[i][col] % p), None)
        if piv is None:
            col += 1
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        inv = pow(rows[rank][col], -1, p)
        rows[rank] = [x * inv % p for x in rows[rank]]
        for i in range(len(rows)):
            if i != rank and rows[i][col] % p:
                f = rows[i][col]
                rows[i] = [(a - f * b) % p for a, b in zip(rows[i], rows[rank])]
        rank += 1
        col += 1
    return rank


def all_subspaces_naive(m, p):
    """Every subspace of F_p^m as a (dim, basis) pair, deduplicated by element set."""
    vecs = list(product(range(p), repeat=m))
    seen = {}
    for k in range(m + 1):
        for basis in product(vecs, repeat=k):
            if naive_rank(basis, p) != k:
                continue
            elems = frozenset(
                tuple(sum(c * v[i] for c, v in zip(cs, basis)) % p for i in range(m))
                for cs in product(range(p), repeat=k)
            )
            seen.setdefault(elems, (k, basis))
    return list(seen.values())


def naive_min_slack(phi, P, p):
    T = phi.type
    per_block = [all_subspaces_naive(m, p) for m in T.mults]
    best = None
    for fam in product(*per_block):
        dims = [k for k, _ in fam]
        if not any(dims):
            continue
        img = []
        for blk, (k, basis) in zip(phi.blocks, fam):
            nmon = len(blk.entries[0][0].coeffs)
            for v in basis:
                for h in range(nmon):
                    img.append([sum(c * int(blk.entries[i][j].coeffs[h]) for j, c in enumerate(v)) % p for i in range(T.n)])
        e = naive_rank(img, p) if img else 0
        if dims == list(T.mults) and e == T.n:
            continue
        slack = P.mu * e - sum(l * k for l, k in zip(P.lambdas, dims))
        best = slack if best is None else min(best, slack)
    return best


SMALL = [
    MorphismType.of(1, (2, 1), (1, 1), 2),
    MorphismType.of(2, (3, 2), (1, 1), 3),
    MorphismType.of(1, (3, 1), (1, 2), 3),
    MorphismType.of(2, (2, 1), (2, 1), 3),
]


@pytest.mark.parametrize("p", [2, 3])
def test_king_matches_naive_oracle(p):
    rng = random.Random(11)
    for t in range(40):
        T = SMALL[t % len(SMALL)]
        phi = Morphism.random(T, p, rng, density=rng.choice([0.2, 0.5, 0.9]))
        c = rng.choice(chambers(T))
        x = rng.choice([c.midpoint, c.lo if c.lo > 0 else c.midpoint])
        P = Polarization.from_lambda1(T, x)
        v = decide_semistable(phi, P, p)
        assert v.slack == naive_min_slack(phi, P, p)
        want = UNSTABLE if v.slack < 0 else PROPERLY_SEMISTABLE if v.slack == 0 else STABLE
        assert v.status == want


def test_zero_morphism_unstable():
    T = MorphismType.of(2, (3, 2), (1, 1), 3)
    zero = Morphism.zero(T, 2)
    v = decide_semistable(zero, Polarization.from_lambda1(T, F(1, 6)), 2)
    assert v.status == UNSTABLE and v.slack == -1
    assert v.witness.dims == (1, 1) and v.witness.image_dim == 0


def test_witness_image_dim_recomputed():
    T = MorphismType.of(1, (3, 1), (1, 2), 3)
    rng = random.Random(5)
    for _ in range(10):
        phi = Morphism.random(T, 3, rng, density=0.3)
        v = decide_semistable(phi, Polarization.from_lambda1(T, F(1, 12)), 3)
        assert min_image_dim(phi, v.witness.subspaces, 3) == v.witness.image_dim


def test_construction_verdicts():
    T = MorphismType.of(2, (3, 2), (1, 1), 3)
    gen = construct_semistable(T)
    for c in chambers(T):
        assert decide_semistable(gen, Polarization.from_lambda1(T, c.midpoint), 3).status == STABLE
    ps = construct_semistable(T, "properly_semistable", 2)
    assert decide_semistable(ps, Polarization.from_lambda1(T, F(2, 3)), 2).status == PROPERLY_SEMISTABLE


def test_block_forms_agree_with_king():
    rng = random.Random(3)
    for t in range(60):
        T = SMALL[t % len(SMALL)]
        phi = Morphism.random(T, 2, rng, density=rng.choice([0.2, 0.6]))
        P = Polarization.from_lambda1(T, rng.choice(chambers(T)).lo or F(1, 4 * T.n * 4))
        assert block_form_status(phi, P, 2)[0] == decide_semistable(phi, P, 2).status


def test_block_form_witness_has_zero_block():
    T = MorphismType.of(2, (3, 2), (1, 1), 3)
    zero = Morphism.zero(T, 2)
    P = Polarization.from_lambda1(T, F(1, 6))
    ok, w = block_form_reachable(zero, P, (0, 0), 2)
    assert ok and w.l == 1 and [len(K) for K in w.kernels] == [1, 1]
    ok, _ = block_form_reachable(construct_semistable(T), P, (0, 0), 2)
    assert not ok


def test_jobs_agree():
    T = MorphismType.of(2, (2, 1), (2, 1), 3)
    rng = random.Random(9)
    phi = Morphism.random(T, 2, rng, density=0.5)
    P = Polarization.from_lambda1(T, F(1, 8))
    a = decide_semistable(phi, P, 2, jobs=1)
    b = decide_semistable(phi, P, 2, jobs=2)
    assert a.to_json() == b.to_json()


def test_no_properly_semistable_inside_chambers():
    rng = random.Random(4)
    for T in SMALL:
        for c in chambers(T):
            for _ in range(5):
                phi = Morphism.random(T, 2, rng, density=0.5)
                assert decide_semistable(phi, Polarization.from_lambda1(T, c.midpoint), 2).status != PROPERLY_SEMISTABLE


def test_invariance_under_target_action():
    T = MorphismType.of(2, (3, 2), (1, 1), 3)
    g = [[1, 1, 0], [0, 1, 2], [0, 0, 1]]
    rng = random.Random(8)
    for _ in range(10):
        phi = Morphism.random(T, 3, rng, density=0.5)
        P = Polarization.from_lambda1(T, F(1, 6))
        assert decide_semistable(phi.act(g), P, 3).slack == decide_semistable(phi, P, 3).slack
