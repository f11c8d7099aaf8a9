"""Enumeration of subspaces of F_p^d by canonical RREF bases."""

from __future__ import annotations

from itertools import combinations, product
from typing import Iterator

from .errors import BudgetExceeded
from .exact import rref

DEFAULT_BUDGET = 5_000_000

Subspace = tuple  # tuple of RREF rows, each a tuple of residues


def gaussian_binomial(d: int, k: int, p: int) -> int:
    """Number of k-dimensional subspaces of F_p^d."""
    if k < 0 or k > d:
        return 0
    num = den = 1
    for i in range(k):
        num *= p ** (d - i) - 1
        den *= p ** (i + 1) - 1
    return num // den


def count_subspaces(d: int, p: int) -> int:
    return sum(gaussian_binomial(d, k, p) for k in range(d + 1))


def check_budget(count: int, budget: int | None, what: str = "subspaces") -> None:
    if budget is not None and count > budget:
        raise BudgetExceeded(count, budget, what)


def enumerate_subspaces(d: int, k: int, p: int, budget: int | None = DEFAULT_BUDGET) -> Iterator[Subspace]:
    """Yield every k-dimensional subspace of F_p^d exactly once.

    Each subspace is its unique RREF basis (a tuple of row tuples).
    Order: pivot sets in lexicographic order, then free entries in
    lexicographic order, row by row.
    """
    check_budget(gaussian_binomial(d, k, p), budget)
    if k == 0:
        yield ()
        return
    for pivots in combinations(range(d), k):
        slots = [(i, j) for i, c in enumerate(pivots) for j in range(c + 1, d) if j not in pivots]
        for values in product(range(p), repeat=len(slots)):
            rows = [[0] * d for _ in range(k)]
            for i, c in enumerate(pivots):
                rows[i][c] = 1
            for (i, j), v in zip(slots, values):
                rows[i][j] = v
            yield tuple(tuple(r) for r in rows)


def all_subspaces(d: int, p: int, budget: int | None = DEFAULT_BUDGET) -> Iterator[Subspace]:
    """Every subspace of F_p^d, by increasing dimension."""
    check_budget(count_subspaces(d, p), budget)
    for k in range(d + 1):
        yield from enumerate_subspaces(d, k, p, budget=None)


def full_space(d: int) -> Subspace:
    return tuple(tuple(int(i == j) for j in range(d)) for i in range(d))


def canonical(vectors, d: int, p: int) -> Subspace:
    """RREF basis of the span of ``vectors`` as a Subspace tuple."""
    if not vectors:
        return ()
    R, _ = rref(vectors, p, d)
    return tuple(tuple(r) for r in R)


def complement_coordinates(sub: Subspace, d: int) -> list[int]:
    """Non-pivot coordinates of an RREF basis; their unit vectors span a complement."""
    pivots = {next(j for j, x in enumerate(row) if x) for row in sub}
    return [j for j in range(d) if j not in pivots]


def superspaces(sub: Subspace, d: int, k: int, p: int, budget: int | None = DEFAULT_BUDGET) -> Iterator[Subspace]:
    """Every k-dimensional subspace of F_p^d containing ``sub``.

    Subspaces containing S correspond to subspaces of F_p^d / S, which is
    identified with the span of the unit vectors at the non-pivot
    coordinates of S.
    """
    s = len(sub)
    if k < s:
        return
    free = complement_coordinates(sub, d)
    check_budget(gaussian_binomial(len(free), k - s, p), budget)
    for q in enumerate_subspaces(len(free), k - s, p, budget=None):
        lifted = []
        for row in q:
            v = [0] * d
            for x, j in zip(row, free):
                v[j] = x
            lifted.append(v)
        yield canonical(list(sub) + lifted, d, p)


def enumerate_subspaces_gf2(d: int, k: int, budget: int | None = DEFAULT_BUDGET) -> Iterator[tuple[int, ...]]:
    """Bit-packed variant of :func:`enumerate_subspaces` for p = 2.

    Bit j of a row is coordinate j.  Same subspaces, same order.
    """
    check_budget(gaussian_binomial(d, k, 2), budget)
    if k == 0:
        yield ()
        return
    for pivots in combinations(range(d), k):
        pset = set(pivots)
        # slot order as in enumerate_subspaces; the last slot varies fastest
        slots = [(i, 1 << j) for i, c in enumerate(pivots) for j in range(c + 1, d) if j not in pset]
        total = len(slots)
        base = [1 << c for c in pivots]
        for mask in range(1 << total):
            rows = list(base)
            for s, (i, bit) in enumerate(slots):
                if (mask >> (total - 1 - s)) & 1:
                    rows[i] |= bit
            yield tuple(rows)
