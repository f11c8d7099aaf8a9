"""Homogeneous forms in r+1 variables and matrices of forms.

Monomials of degree d are exponent tuples ``(i0, ..., ir)`` listed in
descending lexicographic order, so for r=2, d=1 the basis is
``X0, X1, X2``.  A form stores one coefficient per basis monomial.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

from .exact import Prime, binom, format_rational, kernel_basis, parse_rational, rank, scalar


def _compositions(total: int, parts: int):
    """Exponent tuples with ``parts`` entries summing to ``total``, lex descending."""
    if parts == 1:
        yield (total,)
        return
    for first in range(total, -1, -1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


@dataclass(frozen=True)
class MonomialBasis:
    r: int
    degree: int
    monomials: tuple

    @property
    def num_vars(self) -> int:
        return self.r + 1

    def __len__(self):
        return len(self.monomials)

    def index(self, exponents) -> int:
        return _index_table(self.r, self.degree)[tuple(exponents)]


@lru_cache(maxsize=None)
def monomial_basis(r: int, d: int) -> MonomialBasis:
    if r < 0 or d < 0:
        raise ValueError("need r >= 0 and d >= 0")
    mons = tuple(_compositions(d, r + 1))
    assert len(mons) == binom(r + d, r)
    return MonomialBasis(r, d, mons)


@lru_cache(maxsize=None)
def _index_table(r: int, d: int) -> dict:
    return {m: i for i, m in enumerate(monomial_basis(r, d).monomials)}


@lru_cache(maxsize=None)
def product_table(r: int, e: int, d: int) -> tuple:
    """``table[u][v]`` = index in S^{e+d} of (monomial u of S^e) * (monomial v of S^d)."""
    A = monomial_basis(r, e).monomials
    B = monomial_basis(r, d).monomials
    idx = _index_table(r, e + d)
    return tuple(tuple(idx[tuple(x + y for x, y in zip(a, b))] for b in B) for a in A)


def dim_forms(r: int, d: int) -> int:
    """dim S^d of r+1 variables (0 for negative d)."""
    return binom(r + d, r) if d >= 0 else 0


def _zero(p: Prime):
    return 0 if p is not None else Fraction(0)


class HomForm:
    """A homogeneous form with exact coefficients over Q or F_p."""

    __slots__ = ("r", "degree", "coeffs", "p")

    def __init__(self, r: int, degree: int, coeffs: Sequence, p: Prime = None):
        n = dim_forms(r, degree)
        if len(coeffs) != n:
            raise ValueError(f"expected {n} coefficients, got {len(coeffs)}")
        self.r = r
        self.degree = degree
        self.p = p
        self.coeffs = tuple(scalar(c, p) for c in coeffs)

    @classmethod
    def zero(cls, r, degree, p: Prime = None):
        return cls(r, degree, [0] * dim_forms(r, degree), p)

    @classmethod
    def monomial(cls, exponents, coeff=1, p: Prime = None):
        exponents = tuple(exponents)
        r, d = len(exponents) - 1, sum(exponents)
        c = [0] * dim_forms(r, d)
        c[_index_table(r, d)[exponents]] = coeff
        return cls(r, d, c, p)

    @classmethod
    def from_terms(cls, r, degree, terms: Iterable, p: Prime = None):
        """Build from ``(exponents, coeff)`` pairs; repeated monomials add up."""
        c = [0] * dim_forms(r, degree)
        idx = _index_table(r, degree)
        for exps, coeff in terms:
            if len(exps) != r + 1 or sum(exps) != degree:
                raise ValueError(f"monomial {exps} does not have degree {degree} in {r + 1} variables")
            c[idx[tuple(exps)]] += coeff
        return cls(r, degree, c, p)

    @classmethod
    def linear(cls, r, coeffs, p: Prime = None):
        """The linear form sum coeffs[i] * X_i."""
        return cls(r, 1, coeffs, p)

    @property
    def basis(self) -> MonomialBasis:
        return monomial_basis(self.r, self.degree)

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def terms(self):
        mons = self.basis.monomials
        return [(mons[i], c) for i, c in enumerate(self.coeffs) if c]

    def _check(self, other):
        if not isinstance(other, HomForm) or other.r != self.r or other.p != self.p:
            raise ValueError("forms live in different rings")

    def __add__(self, other):
        self._check(other)
        if other.degree != self.degree:
            raise ValueError("cannot add forms of different degrees")
        return HomForm(self.r, self.degree, [a + b for a, b in zip(self.coeffs, other.coeffs)], self.p)

    def __neg__(self):
        return HomForm(self.r, self.degree, [-a for a in self.coeffs], self.p)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        c = scalar(c, self.p)
        return HomForm(self.r, self.degree, [c * a for a in self.coeffs], self.p)

    def __mul__(self, other):
        if isinstance(other, HomForm):
            return multiply(self, other)
        return self.scale(other)

    __rmul__ = __mul__

    def __eq__(self, other):
        return (
            isinstance(other, HomForm)
            and (self.r, self.degree, self.p, self.coeffs) == (other.r, other.degree, other.p, other.coeffs)
        )

    def __hash__(self):
        return hash((self.r, self.degree, self.p, self.coeffs))

    def __repr__(self):
        if self.is_zero():
            return "0"
        parts = []
        for exps, c in self.terms():
            mon = "*".join(f"X{i}^{e}" if e > 1 else f"X{i}" for i, e in enumerate(exps) if e)
            parts.append(f"{c}*{mon}" if mon else str(c))
        return " + ".join(parts)

    def to_json(self):
        return [{"exponents": list(e), "coeff": _coeff_json(c)} for e, c in self.terms()]


def _coeff_json(c):
    if isinstance(c, Fraction) and c.denominator != 1:
        return format_rational(c)
    return int(c)


def form_from_json(data, r: int, degree: int, p: Prime = None) -> HomForm:
    return HomForm.from_terms(r, degree, [(t["exponents"], parse_rational(t["coeff"])) for t in data], p)


def multiply(f: HomForm, g: HomForm) -> HomForm:
    """Exact product of two forms."""
    f._check(g)
    table = product_table(f.r, f.degree, g.degree)
    out = [_zero(f.p)] * dim_forms(f.r, f.degree + g.degree)
    gterms = [(j, b) for j, b in enumerate(g.coeffs) if b]
    for i, a in enumerate(f.coeffs):
        if not a:
            continue
        row = table[i]
        for j, b in gterms:
            out[row[j]] += a * b
    return HomForm(f.r, f.degree + g.degree, out, f.p)


def multiplication_matrix(f: HomForm, d: int) -> list[list]:
    """Matrix of g -> f*g from S^d to S^{d+e}, columns indexed by S^d monomials."""
    table = product_table(f.r, f.degree, d)
    rows = [[_zero(f.p)] * dim_forms(f.r, d) for _ in range(dim_forms(f.r, f.degree + d))]
    for i, a in enumerate(f.coeffs):
        if a:
            for v, t in enumerate(table[i]):
                rows[t][v] += a
    return rows


class FormMatrix:
    """A rows x cols grid of forms of one common degree."""

    def __init__(self, entries: Sequence[Sequence[HomForm]], r: int | None = None, degree: int | None = None, p: Prime = None):
        entries = [list(row) for row in entries]
        flat = [e for row in entries for e in row]
        if flat:
            r = flat[0].r if r is None else r
            degree = flat[0].degree if degree is None else degree
            p = flat[0].p
        if r is None or degree is None:
            raise ValueError("empty FormMatrix needs explicit r and degree")
        for e in flat:
            if (e.r, e.degree, e.p) != (r, degree, p):
                raise ValueError("FormMatrix entries must share r, degree and field")
        if len({len(row) for row in entries}) > 1:
            raise ValueError("ragged FormMatrix")
        self.entries = entries
        self.r = r
        self.degree = degree
        self.p = p

    @classmethod
    def zeros(cls, nrows, ncols, r, degree, p: Prime = None):
        return cls([[HomForm.zero(r, degree, p) for _ in range(ncols)] for _ in range(nrows)], r, degree, p)

    @property
    def nrows(self):
        return len(self.entries)

    @property
    def ncols(self):
        return len(self.entries[0]) if self.entries else 0

    @property
    def shape(self):
        return (self.nrows, self.ncols)

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def column(self, j):
        return [row[j] for row in self.entries]

    def hstack(self, other: "FormMatrix") -> "FormMatrix":
        if other.nrows != self.nrows:
            raise ValueError("row counts differ")
        return FormMatrix([a + b for a, b in zip(self.entries, other.entries)], self.r, self.degree, self.p)

    def transpose(self) -> "FormMatrix":
        return FormMatrix([list(col) for col in zip(*self.entries)], self.r, self.degree, self.p) if self.entries else self

    def is_zero(self) -> bool:
        return all(e.is_zero() for row in self.entries for e in row)

    def __eq__(self, other):
        return isinstance(other, FormMatrix) and self.shape == other.shape and self.entries == other.entries

    def __repr__(self):
        return f"FormMatrix({self.nrows}x{self.ncols}, degree {self.degree})"

    def matmul(self, other: "FormMatrix") -> "FormMatrix":
        """Product of form matrices; entry degrees add."""
        if self.ncols != other.nrows:
            raise ValueError("incompatible shapes")
        deg = self.degree + other.degree
        out = []
        for i in range(self.nrows):
            row = []
            for j in range(other.ncols):
                acc = HomForm.zero(self.r, deg, self.p)
                for k in range(self.ncols):
                    a, b = self.entries[i][k], other.entries[k][j]
                    if not a.is_zero() and not b.is_zero():
                        acc = acc + multiply(a, b)
                row.append(acc)
            out.append(row)
        return FormMatrix(out, self.r, deg, self.p)

    def coefficient_columns(self):
        """``cols[j][h]`` = coefficient vector (over rows) of entry column j at monomial h."""
        D = dim_forms(self.r, self.degree)
        return [[[self.entries[i][j].coeffs[h] for i in range(self.nrows)] for h in range(D)] for j in range(self.ncols)]

    def to_json(self):
        return {
            "r": self.r,
            "degree": self.degree,
            "rows": self.nrows,
            "cols": self.ncols,
            "entries": [[e.to_json() for e in row] for row in self.entries],
        }

    @classmethod
    def from_json(cls, data, p: Prime = None):
        r, d = data["r"], data["degree"]
        entries = [[form_from_json(e, r, d, p) for e in row] for row in data["entries"]]
        if not entries:
            return cls([], r, d, p)
        return cls(entries, r, d, p)


def expanded_matrix(psi: FormMatrix, d: int) -> list[list]:
    """Coefficient matrix of v -> psi * v for v in (S^d)^cols.

    Row block i is S^{d+e} for row i of psi; column block j is S^d.
    """
    r, e, p = psi.r, psi.degree, psi.p
    Din, Dout = dim_forms(r, d), dim_forms(r, d + e)
    table = product_table(r, e, d)
    z = _zero(p)
    M = [[z] * (psi.ncols * Din) for _ in range(psi.nrows * Dout)]
    for i in range(psi.nrows):
        for j in range(psi.ncols):
            for u, a in enumerate(psi.entries[i][j].coeffs):
                if not a:
                    continue
                for v, t in enumerate(table[u]):
                    M[i * Dout + t][j * Din + v] += a
    if p is not None:
        M = [[x % p for x in row] for row in M]
    return M


def form_matrix_kernel(psi: FormMatrix, d: int) -> list[list]:
    """Basis of {v in (S^d)^c : psi v = 0}, as flat coefficient vectors.

    Vector layout: c consecutive blocks of dim S^d coefficients.
    """
    ncols = psi.ncols * dim_forms(psi.r, d)
    M = expanded_matrix(psi, d)
    return kernel_basis(M, ncols, psi.p) if M else kernel_basis([], ncols, psi.p)


def kernel_dimension(psi: FormMatrix, d: int) -> int:
    ncols = psi.ncols * dim_forms(psi.r, d)
    M = expanded_matrix(psi, d)
    return ncols - (rank(M, psi.p) if M else 0)


def vector_to_forms(vec: Sequence, r: int, d: int, p: Prime = None) -> list[HomForm]:
    D = dim_forms(r, d)
    return [HomForm(r, d, vec[j * D:(j + 1) * D], p) for j in range(len(vec) // D)]


def pairing_matrix(vec: Sequence, *, m: int, r: int, degree: int, other_degree: int, p: Prime = None) -> list[list]:
    """Matrix of w -> sum_s f_s w_s, with f = ``vec`` in (S^degree)^m and w in (S^other_degree)^m."""
    D, E = dim_forms(r, degree), dim_forms(r, other_degree)
    table = product_table(r, degree, other_degree)
    z = _zero(p)
    M = [[z] * (m * E) for _ in range(dim_forms(r, degree + other_degree))]
    for s in range(m):
        for u in range(D):
            a = vec[s * D + u]
            if not a:
                continue
            for v, t in enumerate(table[u]):
                M[t][s * E + v] += a
    if p is not None:
        M = [[x % p for x in row] for row in M]
    return M


def pairing_orthogonal(rows: Sequence[Sequence], *, m: int, r: int, degree: int, other_degree: int, p: Prime = None) -> list[list]:
    """Orthogonal of span(rows) under the multiplication pairing.

    ``rows`` live in M (x) S^degree (m blocks); the result is a basis of
    {w in M* (x) S^other_degree : sum_s f_s w_s = 0 for every f in rows}.
    The pairing is symmetric in the two factors, so swapping the degree
    arguments gives the orthogonal in the other direction.
    """
    ncols = m * dim_forms(r, other_degree)
    stacked = []
    for vec in rows:
        stacked.extend(pairing_matrix(vec, m=m, r=r, degree=degree, other_degree=other_degree, p=p))
    return kernel_basis(stacked, ncols, p)
