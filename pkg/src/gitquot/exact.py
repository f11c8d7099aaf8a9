"""Exact scalars and dense linear algebra over Q and F_p.

Scalars are plain Python objects: ``fractions.Fraction`` (or int) over Q,
and ints reduced into ``range(p)`` over F_p.  Every routine takes a
``p`` argument; ``p=None`` selects the rationals.

Over Q the elimination is fraction-free (integer-preserving
Gauss-Jordan in the style of Bareiss) so intermediate entries stay
integers, and only the final normalisation introduces fractions.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb, lcm
from typing import Optional, Sequence

Prime = Optional[int]


def binom(n: int, k: int) -> int:
    """Binomial coefficient, 0 when k > n or k < 0."""
    if k < 0 or n < 0 or k > n:
        return 0
    return comb(n, k)


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    f = 2
    while f * f <= p:
        if p % f == 0:
            return False
        f += 1
    return True


def scalar(x, p: Prime):
    """Coerce ``x`` into the scalar field (Fraction over Q, residue mod p)."""
    if p is None:
        return Fraction(x)
    if isinstance(x, Fraction):
        if x.denominator % p == 0:
            raise ZeroDivisionError(f"{x} has no image in F_{p}")
        return x.numerator * pow(x.denominator, -1, p) % p
    return int(x) % p


def inverse(x, p: Prime):
    if p is None:
        return 1 / Fraction(x)
    return pow(x, -1, p)


def parse_rational(text) -> Fraction:
    """Parse ``"p/q"``, ``"p"`` or an int into an exact Fraction (floats refused)."""
    if isinstance(text, float):
        raise TypeError("floating point values are not accepted; use 'p/q' strings")
    return Fraction(text)


def format_rational(x) -> str:
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


# ---------------------------------------------------------------------------
# elimination


def _rref_mod(rows, p):
    A = [[x % p for x in row] for row in rows]
    pivots = []
    r = 0
    ncols = len(A[0]) if A else 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(A)) if A[i][c]), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        inv = pow(A[r][c], -1, p)
        A[r] = [x * inv % p for x in A[r]]
        pr = A[r]
        for i in range(len(A)):
            if i != r and A[i][c]:
                f = A[i][c]
                A[i] = [(x - f * y) % p for x, y in zip(A[i], pr)]
        pivots.append(c)
        r += 1
        if r == len(A):
            break
    return A[:r], pivots


def _integer_rows(rows):
    out = []
    for row in rows:
        fr = [Fraction(x) for x in row]
        den = lcm(*(x.denominator for x in fr)) if fr else 1
        out.append([int(x * den) for x in fr])
    return out


def _bareiss_gauss_jordan(A):
    """Fraction-free Gauss-Jordan on an integer matrix, in place.

    Returns the pivot columns.  After the sweep every pivot row carries
    the same pivot value (the last leading minor), all other entries of
    pivot columns are zero, and every division performed is exact.
    """
    prev = 1
    pivots = []
    r = 0
    nrows = len(A)
    ncols = len(A[0]) if A else 0
    for c in range(ncols):
        piv = next((i for i in range(r, nrows) if A[i][c]), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        pv = A[r][c]
        pr = A[r]
        for i in range(nrows):
            if i == r:
                continue
            f = A[i][c]
            row = A[i]
            new = []
            for x, y in zip(row, pr):
                q, rem = divmod(pv * x - f * y, prev)
                assert rem == 0, "non-exact Bareiss division"
                new.append(q)
            A[i] = new
        prev = pv
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return pivots


def _rref_rational(rows):
    A = _integer_rows(rows)
    pivots = _bareiss_gauss_jordan(A)
    out = []
    for k, c in enumerate(pivots):
        pv = A[k][c]
        out.append([Fraction(x, pv) for x in A[k]])
    return out, pivots


def rref(rows: Sequence[Sequence], p: Prime = None, ncols: int | None = None):
    """Reduced row echelon form.

    Returns ``(R, pivots)`` where ``R`` holds only the nonzero rows.
    """
    rows = [list(r) for r in rows]
    if not rows:
        return [], []
    if ncols is not None and any(len(r) != ncols for r in rows):
        raise ValueError("ragged matrix")
    if p is None:
        return _rref_rational(rows)
    return _rref_mod(rows, p)


def rank(rows: Sequence[Sequence], p: Prime = None) -> int:
    rows = [r for r in rows if any(r)]
    if not rows:
        return 0
    if p == 2 and len(rows[0]) <= 4096:
        return rank_gf2([pack_bits(r) for r in rows])
    return len(rref(rows, p)[1])


def kernel_basis(rows: Sequence[Sequence], ncols: int, p: Prime = None) -> list[list]:
    """RREF-canonical basis of the right null space.

    One basis vector per free column ``f``: it has a 1 at ``f``, zeros at
    the other free columns, and the negated RREF entries at the pivots.
    """
    R, pivots = rref(rows, p) if rows else ([], [])
    one = 1 if p is not None else Fraction(1)
    zero = 0 if p is not None else Fraction(0)
    pivset = set(pivots)
    basis = []
    for f in range(ncols):
        if f in pivset:
            continue
        v = [zero] * ncols
        v[f] = one
        for k, c in enumerate(pivots):
            x = R[k][f]
            if x:
                v[c] = (-x) % p if p is not None else -x
        basis.append(v)
    return basis


def row_space(rows: Sequence[Sequence], p: Prime = None) -> list[list]:
    """RREF basis of the row space (the canonical form of a subspace)."""
    return rref([r for r in rows], p)[0] if rows else []


def contains(space_rref: Sequence[Sequence], vectors: Sequence[Sequence], p: Prime = None) -> bool:
    """True if every vector lies in the span of ``space_rref``."""
    base = len(space_rref)
    return rank(list(space_rref) + list(vectors), p) == base


def matmul(A, B, p: Prime = None):
    n = len(B[0]) if B else 0
    out = []
    for row in A:
        acc = [0] * n
        for a, brow in zip(row, B):
            if a:
                acc = [x + a * y for x, y in zip(acc, brow)]
        out.append([x % p for x in acc] if p is not None else acc)
    return out


@dataclass
class ExactMatrix:
    """Dense matrix over Q (``p=None``) or F_p with value semantics."""

    rows: list
    ncols: int
    p: Prime = None

    def __post_init__(self):
        self.rows = [[scalar(x, self.p) for x in r] for r in self.rows]
        if any(len(r) != self.ncols for r in self.rows):
            raise ValueError("row length does not match ncols")

    @classmethod
    def zeros(cls, nrows, ncols, p: Prime = None):
        return cls([[0] * ncols for _ in range(nrows)], ncols, p)

    @classmethod
    def identity(cls, n, p: Prime = None):
        return cls([[int(i == j) for j in range(n)] for i in range(n)], n, p)

    @property
    def nrows(self):
        return len(self.rows)

    def rank(self):
        return rank(self.rows, self.p)

    def rref(self):
        return rref(self.rows, self.p, self.ncols)

    def kernel_basis(self):
        return kernel_basis(self.rows, self.ncols, self.p)

    def __matmul__(self, other: "ExactMatrix"):
        if self.p != other.p or self.ncols != other.nrows:
            raise ValueError("incompatible matrices")
        return ExactMatrix(matmul(self.rows, other.rows, self.p), other.ncols, self.p)


# ---------------------------------------------------------------------------
# GF(2) bit-packed helpers (vectors as ints, bit i = coordinate i)


def pack_bits(vec) -> int:
    out = 0
    for i, x in enumerate(vec):
        if x % 2:
            out |= 1 << i
    return out


def unpack_bits(x: int, n: int) -> list[int]:
    return [(x >> i) & 1 for i in range(n)]


def rank_gf2(rows) -> int:
    """Rank of a list of bit-packed GF(2) rows."""
    basis = []  # kept reduced by leading bit
    for v in rows:
        for b in basis:
            v = min(v, v ^ b)
        if v:
            basis.append(v)
    return len(basis)


def reduce_gf2(rows):
    """Return a list of independent rows, each with a distinct leading bit."""
    basis = []
    for v in rows:
        for b in basis:
            v = min(v, v ^ b)
        if v:
            basis.append(v)
            basis.sort(reverse=True)
    return basis


def kernel_gf2(rows, ncols: int) -> list[int]:
    """Right null space of bit-packed rows, as bit-packed vectors."""
    R, pivots = _rref_mod([unpack_bits(r, ncols) for r in rows], 2) if rows else ([], [])
    return [pack_bits(v) for v in kernel_basis(R, ncols, 2)] if R else [
        1 << i for i in range(ncols)
    ]
