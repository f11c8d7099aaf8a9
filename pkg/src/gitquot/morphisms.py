"""Morphism types, polarizations, thresholds and irregular values.

A morphism type is ``sum_i m_i O(-d_i) -> n O`` on P^r.  A morphism is
stored block by block: block i is an n x m_i matrix of forms of degree
d_i.  Polarizations are exact rational weights ``lambdas`` on the
source blocks and ``mu`` on the target with ``sum m_i lambda_i = n mu``.
"""

from __future__ import annotations

from random import Random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import product
from math import floor, gcd
from typing import Sequence

from .conditions import Condition, cond
from .errors import AllIrregular, UnsupportedShape
from .exact import Prime, binom, format_rational, parse_rational
from .forms import FormMatrix, HomForm, dim_forms, monomial_basis


@dataclass(frozen=True)
class Block:
    degree: int
    mult: int


@dataclass(frozen=True)
class MorphismType:
    r: int
    blocks: tuple
    n: int

    def __post_init__(self):
        blocks = tuple(b if isinstance(b, Block) else Block(*b) for b in self.blocks)
        object.__setattr__(self, "blocks", blocks)
        if self.r < 1:
            raise ValueError("r must be at least 1")
        if not blocks:
            raise ValueError("need at least one source block")
        degs = [b.degree for b in blocks]
        if any(x <= y for x, y in zip(degs, degs[1:])) or degs[-1] <= 0:
            raise ValueError("source degrees must be strictly decreasing and positive")
        if any(b.mult < 1 for b in blocks) or self.n < 1:
            raise ValueError("multiplicities and n must be positive")

    @classmethod
    def of(cls, r, degrees: Sequence[int], mults: Sequence[int], n: int) -> "MorphismType":
        return cls(r, tuple(Block(d, m) for d, m in zip(degrees, mults)), n)

    @property
    def degrees(self):
        return tuple(b.degree for b in self.blocks)

    @property
    def mults(self):
        return tuple(b.mult for b in self.blocks)

    @property
    def nblocks(self):
        return len(self.blocks)

    def h(self, i: int) -> int:
        """dim Hom(O(-d_i), O) = dim S^{d_i}."""
        return dim_forms(self.r, self.blocks[i].degree)

    def a(self, i: int, j: int) -> int:
        """a_{ij} = dim S^{d_j - d_i} (1-based block indices, j < i)."""
        return dim_forms(self.r, self.degrees[j - 1] - self.degrees[i - 1])

    @property
    def a21(self):
        return self.a(2, 1)

    @property
    def a31(self):
        return self.a(3, 1)

    @property
    def a32(self):
        return self.a(3, 2)

    @property
    def kind(self) -> str:
        if self.nblocks == 2:
            return "21"
        if self.nblocks == 3 and self.mults[1] == self.mults[2] == 1:
            return "31"
        return "other"

    @property
    def p1(self) -> int:
        if self.kind == "21":
            return self.mults[0] + self.mults[1] * self.a21
        if self.kind == "31":
            return self.mults[0] + self.a21 + self.a31
        raise UnsupportedShape("p1 is defined for two-block and (m,1,1) three-block types")

    @property
    def p2(self) -> int:
        if self.kind == "21":
            return self.mults[1]
        if self.kind == "31":
            return 1 + self.a32
        raise UnsupportedShape("p2 is defined for two-block and (m,1,1) three-block types")

    def to_json(self):
        return {"r": self.r, "blocks": [{"degree": b.degree, "mult": b.mult} for b in self.blocks], "n": self.n}

    @classmethod
    def from_json(cls, data):
        """Accepts the ``blocks`` form written by to_json or flat ``degrees``/``mults`` lists."""
        if "blocks" not in data:
            return cls.of(data["r"], data["degrees"], data["mults"], data["n"])
        return cls(data["r"], tuple(Block(b["degree"], b["mult"]) for b in data["blocks"]), data["n"])


# ---------------------------------------------------------------------------
# polarizations


@dataclass(frozen=True)
class Polarization:
    """Weights on the source blocks and the target.

    The normalized form has ``mu = 1/n`` and ``sum m_i lambda_i = 1``;
    proportional weight tuples define the same stability notion.
    """

    lambdas: tuple
    mu: Fraction

    def __post_init__(self):
        object.__setattr__(self, "lambdas", tuple(Fraction(x) for x in self.lambdas))
        object.__setattr__(self, "mu", Fraction(self.mu))

    def validate(self, T: MorphismType) -> "Polarization":
        if len(self.lambdas) != T.nblocks:
            raise ValueError("one weight per source block is required")
        if any(x <= 0 for x in self.lambdas) or self.mu <= 0:
            raise ValueError("weights must be positive")
        if sum(m * x for m, x in zip(T.mults, self.lambdas)) != T.n * self.mu:
            raise ValueError("weights violate sum m_i lambda_i = n mu")
        return self

    def normalized(self, T: MorphismType) -> "Polarization":
        s = sum(m * x for m, x in zip(T.mults, self.lambdas))
        return Polarization(tuple(x / s for x in self.lambdas), self.mu / s)

    def scaled(self, k) -> "Polarization":
        return Polarization(tuple(k * x for x in self.lambdas), k * self.mu)

    @classmethod
    def from_lambda1(cls, T: MorphismType, lambda1) -> "Polarization":
        """Two-block types: lambda_2 = (1 - m_1 lambda_1) / m_2."""
        if T.nblocks != 2:
            raise UnsupportedShape("from_lambda1 needs a two-block type")
        l1 = Fraction(lambda1)
        m1, m2 = T.mults
        return cls((l1, (1 - m1 * l1) / m2), Fraction(1, T.n)).validate(T)

    @classmethod
    def from_lambdas(cls, T: MorphismType, *lambdas) -> "Polarization":
        """All but the last weight given; the last one is fixed by normalization."""
        if len(lambdas) != T.nblocks - 1:
            raise ValueError(f"expected {T.nblocks - 1} weights")
        ls = [Fraction(x) for x in lambdas]
        rest = 1 - sum(m * x for m, x in zip(T.mults, ls))
        ls.append(rest / T.mults[-1])
        return cls(tuple(ls), Fraction(1, T.n)).validate(T)

    @classmethod
    def from_integer_weights(cls, T: MorphismType, weights: Sequence[int], target_weight: int) -> "Polarization":
        return cls(tuple(Fraction(w) for w in weights), Fraction(target_weight)).validate(T)

    def to_json(self):
        return {"lambdas": [format_rational(x) for x in self.lambdas], "mu": format_rational(self.mu)}

    @classmethod
    def from_json(cls, data, T: MorphismType | None = None):
        P = cls(tuple(parse_rational(x) for x in data["lambdas"]), parse_rational(data["mu"]))
        return P.validate(T) if T is not None else P


@dataclass(frozen=True)
class TildePolarization:
    alphas: tuple
    beta: Fraction

    @classmethod
    def from_polarization(cls, T: MorphismType, P: Polarization) -> "TildePolarization":
        P = P.normalized(T)
        if T.kind == "21":
            l1, l2 = P.lambdas
            return cls((l1, l2 - T.a21 * l1), P.mu)
        if T.kind == "31":
            l1, l2, l3 = P.lambdas
            a3 = l3 - T.a31 * l1 - T.a32 * l2 + T.a32 * T.a21 * l1
            return cls((l1, l2 - T.a21 * l1, a3), P.mu)
        raise UnsupportedShape("tilde weights need a (2,1) or (3,1) type")

    def gates(self, T: MorphismType) -> list[Condition]:
        """Positivity requirements for the reductive embedding."""
        out = [cond("alpha_2 > 0", self.alphas[1], ">", 0)]
        if T.kind == "31":
            out.append(cond("alpha_3 > 0", self.alphas[2], ">", 0))
            out.append(cond("lambda_1 p_1 < 1", self.alphas[0] * T.p1, "<", 1))
        return out

    def to_json(self):
        return {"alphas": [format_rational(x) for x in self.alphas], "beta": format_rational(self.beta)}


# ---------------------------------------------------------------------------
# thresholds


def weighted_sum(P: Polarization, kappas: Sequence[int]) -> Fraction:
    return sum((k * x for k, x in zip(kappas, P.lambdas)), Fraction(0))


def threshold_l(P: Polarization, kappas: Sequence[int], n: int | None = None) -> int:
    """Least integer l with l * mu > sum kappa_i lambda_i, capped at n + 1.

    ``n`` defaults to the normalized reading n = 1/mu.
    """
    if n is None:
        n = 1 / P.mu
        if n.denominator != 1:
            raise ValueError("pass n explicitly for unnormalized polarizations")
        n = int(n)
    s = weighted_sum(P, kappas) / P.mu
    return min(floor(s) + 1, n + 1)


def threshold_l_weak(P: Polarization, kappas: Sequence[int], n: int) -> int:
    """Least integer l >= 0 with l * mu >= sum kappa_i lambda_i."""
    s = weighted_sum(P, kappas) / P.mu
    return -floor(-s)


# ---------------------------------------------------------------------------
# irregular values


def is_degenerate(T: MorphismType) -> tuple[bool, str]:
    """Whether every polarization of T is irregular.

    This happens exactly when some proper nonzero multiple t*(m, n), with
    0 < t < 1, is integral, i.e. when gcd(m_1, ..., m_k, n) > 1.
    """
    g = gcd(*T.mults, T.n)
    if g > 1:
        return True, (
            f"gcd of multiplicities and n is {g}: the subfamily of dimensions "
            f"{tuple(m // g for m in T.mults)} with target dimension {T.n // g} ties for every polarization"
        )
    return False, ""


def _patterns(T: MorphismType):
    """All (a, b) with 0 <= a_i <= m_i, 0 <= b <= n, except (0,0) and (m,n)."""
    full = (T.mults, T.n)
    for a in product(*(range(m + 1) for m in T.mults)):
        for b in range(T.n + 1):
            if (not any(a) and b == 0) or (a, b) == full:
                continue
            yield a, b


def exact_irregular_values(T: MorphismType) -> list[Fraction]:
    """lambda_1 values in [0, 1/m_1] where some pattern ties, for two-block types."""
    if T.nblocks != 2:
        raise UnsupportedShape("lambda_1 values need a two-block type")
    m1, m2 = T.mults
    n = T.n
    hi = Fraction(1, m1)
    out = {Fraction(0), hi}
    for (a1, a2), b in _patterns(T):
        # b/n = a1 l1 + a2 (1 - m1 l1)/m2
        coef = Fraction(a1) - Fraction(a2 * m1, m2)
        rhs = Fraction(b, n) - Fraction(a2, m2)
        if coef == 0:
            if rhs == 0:
                raise AllIrregular(is_degenerate(T)[1] or "every polarization is irregular")
            continue
        x = rhs / coef
        if 0 <= x <= hi:
            out.add(x)
    return sorted(out)


def _recognized_candidates(T: MorphismType) -> tuple[str, set] | None:
    """Candidate sets printed for the studied shapes (a superset of the exact walls)."""
    if T.nblocks != 2:
        return None
    (d1, m1), (d2, m2) = ((b.degree, b.mult) for b in T.blocks)
    n = T.n
    if m1 == m2 == 1:
        return "k/n", {Fraction(k, n) for k in range(n + 1)}
    if m2 == 2:
        return "k/(pn), p <= m", {Fraction(k, p * n) for k in range(n + 1) for p in range(1, m1 + 1)}
    if T.r == 2 and m2 == 3 and m1 == 1 and d1 - d2 in (1, 2):
        return "k/(2n)", {Fraction(k, 2 * n) for k in range(2 * n + 1)}
    if T.r == 2 and m2 == 3 and d2 == 1:
        return "k/(pn), k <= 2n, p <= 2m", {
            Fraction(k, p * n) for k in range(2 * n + 1) for p in range(1, 2 * m1 + 1)
        }
    return None


@dataclass(frozen=True)
class Line:
    """The line c1*lambda_1 + c2*lambda_2 = c0 in the (lambda_1, lambda_2) plane."""

    c1: Fraction
    c2: Fraction
    c0: Fraction

    def value(self, l1, l2) -> Fraction:
        return self.c1 * l1 + self.c2 * l2 - self.c0

    def contains(self, l1, l2) -> bool:
        return self.value(l1, l2) == 0

    def to_json(self):
        return {"c1": format_rational(self.c1), "c2": format_rational(self.c2), "c0": format_rational(self.c0)}


def _normalize_line(c1, c2, c0) -> Line:
    lead = c1 if c1 != 0 else c2
    return Line(c1 / lead, c2 / lead, c0 / lead)


def irregular_lines(T: MorphismType) -> list[Line]:
    """Wall lines in the (lambda_1, lambda_2) plane for (m,1,1) three-block types.

    Each pattern gives a1 l1 + a2 l2 + a3 l3 = b/n with l3 = 1 - m l1 - l2.
    """
    if T.kind != "31":
        raise UnsupportedShape("wall lines are computed for (m,1,1) three-block types")
    m = T.mults[0]
    lines = set()
    for (a1, a2, a3), b in _patterns(T):
        c1, c2, c0 = Fraction(a1 - a3 * m), Fraction(a2 - a3), Fraction(b, T.n) - a3
        if c1 == 0 and c2 == 0:
            if c0 == 0:
                raise AllIrregular("every polarization is irregular")
            continue
        lines.add(_normalize_line(c1, c2, c0))
    return sorted(lines, key=lambda L: (L.c1, L.c2, L.c0))


def irregular_values(T: MorphismType):
    """Sorted candidate walls for lambda_1 (two blocks) or wall lines ((m,1,1) types).

    For two-block types this is the exact set of lambda_1 in [0, 1/m_1]
    where some subspace pattern ties, merged with the printed candidate
    set for the studied shapes.
    """
    degenerate, reason = is_degenerate(T)
    if degenerate:
        raise AllIrregular(reason)
    if T.kind == "31":
        return irregular_lines(T)
    values = set(exact_irregular_values(T))
    rec = _recognized_candidates(T)
    if rec is not None:
        hi = Fraction(1, T.mults[0])
        values |= {x for x in rec[1] if 0 <= x <= hi}
    return sorted(values)


@lru_cache(maxsize=256)
def _wall_set(T: MorphismType) -> frozenset:
    return frozenset(irregular_values(T))


def on_wall(T: MorphismType, P: Polarization) -> bool:
    """True when the polarization lies on a candidate wall (or the type is degenerate)."""
    if is_degenerate(T)[0]:
        return True
    P = P.normalized(T)
    if T.kind == "31":
        return any(L.contains(P.lambdas[0], P.lambdas[1]) for L in irregular_lines(T))
    if T.nblocks == 2:
        return P.lambdas[0] in _wall_set(T)
    raise UnsupportedShape("wall test needs a two-block or (m,1,1) type")


def inequality_patterns(T: MorphismType, P: Polarization) -> frozenset:
    """The set {(a, b) : b mu > sum a_i lambda_i} over all admissible patterns."""
    return frozenset((a, b) for a, b in _patterns(T) if b * P.mu > weighted_sum(P, a))


@dataclass(frozen=True)
class Chamber:
    lo: Fraction
    hi: Fraction

    @property
    def midpoint(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def __contains__(self, x) -> bool:
        return self.lo < x < self.hi

    def to_json(self):
        return {"lo": format_rational(self.lo), "hi": format_rational(self.hi), "midpoint": format_rational(self.midpoint)}


def chambers(T: MorphismType) -> list[Chamber]:
    vals = irregular_values(T)
    if T.kind == "31":
        raise UnsupportedShape("chambers of (m,1,1) types are polygons; use irregular_lines")
    return [Chamber(a, b) for a, b in zip(vals, vals[1:])]


def chamber_of(T: MorphismType, lambda1) -> Chamber:
    x = Fraction(lambda1)
    for c in chambers(T):
        if x in c:
            return c
    raise ValueError(f"lambda_1 = {x} lies on a wall or outside (0, 1/m_1)")


# ---------------------------------------------------------------------------
# morphisms


class Morphism:
    """phi = (phi^1, ..., phi^k) with phi^i an n x m_i matrix of degree-d_i forms."""

    def __init__(self, T: MorphismType, blocks: Sequence[FormMatrix], p: Prime = None):
        if len(blocks) != T.nblocks:
            raise ValueError("one form matrix per source block is required")
        for blk, b in zip(blocks, T.blocks):
            if blk.shape != (T.n, b.mult) or blk.degree != b.degree or blk.r != T.r or blk.p != p:
                raise ValueError("block does not match the morphism type")
        self.type = T
        self.blocks = list(blocks)
        self.p = p

    @classmethod
    def zero(cls, T: MorphismType, p: Prime = None):
        return cls(T, [FormMatrix.zeros(T.n, b.mult, T.r, b.degree, p) for b in T.blocks], p)

    @classmethod
    def from_columns(cls, T: MorphismType, columns: Sequence[Sequence[HomForm]], p: Prime = None):
        """Build from a flat list of source columns (block 1 columns first)."""
        blocks, k = [], 0
        for b in T.blocks:
            cols = columns[k:k + b.mult]
            k += b.mult
            blocks.append(FormMatrix([[cols[j][i] for j in range(b.mult)] for i in range(T.n)], T.r, b.degree, p))
        return cls(T, blocks, p)

    @classmethod
    def random(cls, T: MorphismType, p: int, rng: Random, density: float = 0.5):
        """Coefficients are nonzero with probability ``density``, uniform in F_p^*."""
        blocks = []
        for b in T.blocks:
            D = dim_forms(T.r, b.degree)
            rows = []
            for _ in range(T.n):
                row = []
                for _ in range(b.mult):
                    coeffs = [rng.randrange(1, p) if rng.random() < density else 0 for _ in range(D)]
                    row.append(HomForm(T.r, b.degree, coeffs, p))
                rows.append(row)
            blocks.append(FormMatrix(rows, T.r, b.degree, p))
        return cls(T, blocks, p)

    def reduce(self, p: int) -> "Morphism":
        """Image modulo p of a morphism with integral coefficients."""
        blocks = [
            FormMatrix([[HomForm(e.r, e.degree, e.coeffs, p) for e in row] for row in blk.entries], blk.r, blk.degree, p)
            for blk in self.blocks
        ]
        return Morphism(self.type, blocks, p)

    def act(self, g: Sequence[Sequence[int]]) -> "Morphism":
        """Left multiplication by a constant n x n matrix g (the target group action)."""
        out = []
        for blk in self.blocks:
            rows = []
            for i in range(blk.nrows):
                row = []
                for j in range(blk.ncols):
                    acc = HomForm.zero(blk.r, blk.degree, self.p)
                    for k in range(blk.nrows):
                        if g[i][k]:
                            acc = acc + blk.entries[k][j].scale(g[i][k])
                    row.append(acc)
                rows.append(row)
            out.append(FormMatrix(rows, blk.r, blk.degree, self.p))
        return Morphism(self.type, out, self.p)

    def __eq__(self, other):
        return isinstance(other, Morphism) and self.type == other.type and self.blocks == other.blocks and self.p == other.p

    def __repr__(self):
        return f"Morphism({self.type}, p={self.p})"

    def to_json(self):
        return {
            "type": self.type.to_json(),
            "blocks": [[[e.to_json() for e in row] for row in blk.entries] for blk in self.blocks],
        }

    @classmethod
    def from_json(cls, data, p: Prime = None):
        from .forms import form_from_json

        T = MorphismType.from_json(data["type"])
        blocks = []
        for blk, b in zip(data["blocks"], T.blocks):
            rows = [[form_from_json(e, T.r, b.degree, p) for e in row] for row in blk]
            blocks.append(FormMatrix(rows, T.r, b.degree, p))
        return cls(T, blocks, p)


# ---------------------------------------------------------------------------
# nonemptiness and explicit constructions


@dataclass
class NonemptyReport:
    shape: str
    conditions: list = field(default_factory=list)

    @property
    def holds(self) -> bool:
        return all(c.holds for c in self.conditions)

    def to_json(self):
        return {"shape": self.shape, "holds": self.holds, "conditions": [c.to_json() for c in self.conditions]}


def _kappa_of(T: MorphismType, where) -> int:
    """kappa with kappa/n < lambda_1 < (kappa+1)/n for a chamber or interior point."""
    if where is None:
        raise ValueError("this test depends on the chamber; pass one")
    x = where.midpoint if isinstance(where, Chamber) else (
        where.normalized(T).lambdas[0] if isinstance(where, Polarization) else Fraction(where)
    )
    k = floor(x * T.n)
    if Fraction(k, T.n) == x:
        raise ValueError("lambda_1 lies on a wall k/n; pass a chamber")
    return k


def _is_plane_gap2(T: MorphismType) -> bool:
    return T.r == 2 and T.mults == (1, 3) and T.degrees[0] - T.degrees[1] == 2


def nonempty_conditions(T: MorphismType, where=None) -> NonemptyReport:
    """Sufficient (or, for the O(-d-2)+3O(-d) shape, exact) nonemptiness tests.

    ``where`` is a Chamber, a Polarization or a lambda_1 value; the
    m_1 = m_2 = 1 test does not depend on it.
    """
    if T.nblocks == 2 and T.mults == (1, 1):
        d1, d2 = T.degrees
        rep = NonemptyReport("m1=m2=1")
        rep.conditions.append(cond("n <= dim S^(d2-1)", T.n, "<=", binom(T.r + d2 - 1, T.r)))
        rep.conditions.append(cond("n <= dim S^d1 U", T.n, "<=", binom(T.r - 1 + d1, T.r - 1)))
        return rep
    if T.nblocks == 2 and T.mults == (1, 2):
        d1, d2 = T.degrees
        k = _kappa_of(T, where)
        P = Polarization.from_lambda1(T, Fraction(2 * k + 1, 2 * T.n))
        l1 = threshold_l(P, (1, 0))
        l3 = threshold_l(P, (1, 1))
        h = dim_forms(T.r, d2 - 1)
        rep = NonemptyReport("m=1,m2=2")
        rep.conditions.append(cond(f"n <= dim S^(d2-1) + l3 - 1 (l3={l3})", T.n, "<=", h + l3 - 1))
        rep.conditions.append(cond(f"n <= 2 dim S^(d2-1) + l1 - 1 (l1={l1})", T.n, "<=", 2 * h + l1 - 1))
        rep.conditions.append(cond("n <= dim S^d1 U", T.n, "<=", binom(T.r - 1 + d1, T.r - 1)))
        return rep
    if _is_plane_gap2(T):
        if isinstance(where, Polarization):
            P = where.normalized(T)
        else:
            x = where.midpoint if isinstance(where, Chamber) else Fraction(where)
            P = Polarization.from_lambda1(T, x)
        l1, l2 = P.lambdas
        n = T.n
        d = T.degrees[1]
        B, A = binom(d + 2, 2), binom(d + 4, 2)
        rep = NonemptyReport("O(-d-2)+3O(-d)")
        rep.conditions += [
            cond("n <= n l1 + 3 B", n, "<=", n * l1 + 3 * B),
            cond("n <= n l1 + n l2 + 2 B", n, "<=", n * l1 + n * l2 + 2 * B),
            cond("n <= n l1 + 2 n l2 + B", n, "<=", n * l1 + 2 * n * l2 + B),
            cond("n <= n l2 + A + 2 B", n, "<=", n * l2 + A + 2 * B),
            cond("n <= 2 n l2 + A + B", n, "<=", 2 * n * l2 + A + B),
            cond("n <= 3 n l2 + A", n, "<=", 3 * n * l2 + A),
            cond("l2 <= B / n", l2, "<=", Fraction(B, n)),
        ]
        return rep
    raise UnsupportedShape("nonemptiness tests exist for m1=m2=1, (1,2) and O(-d-2)+3O(-d) types only")


def construct_semistable(T: MorphismType, variant="generic", kappa: int | None = None, p: Prime = None) -> Morphism:
    """Explicit morphism of type O(-d1) + O(-d2) -> n O.

    psi = X0 and U = span(X1..Xr); row i has phi_i1 the i-th lex monomial
    of S^{d1} U and phi_i2 = X0 times the i-th lex monomial of S^{d2-1}.
    The ``properly_semistable`` variant keeps only the first ``kappa``
    entries of the first column, which makes the morphism properly
    semistable at lambda_1 = kappa/n.
    """
    if T.nblocks != 2 or T.mults != (1, 1):
        raise UnsupportedShape("the explicit construction covers O(-d1) + O(-d2) -> nO only")
    d1, d2 = T.degrees
    rep = nonempty_conditions(T)
    if not rep.holds:
        raise UnsupportedShape("n exceeds the dimension bounds of the construction")
    if variant not in ("generic", "properly_semistable"):
        raise ValueError(f"unknown variant {variant!r}")
    if variant == "properly_semistable" and (kappa is None or not 1 <= kappa <= T.n - 1):
        raise ValueError("properly_semistable needs 1 <= kappa <= n-1")
    n, r = T.n, T.r
    first = [m for m in monomial_basis(r, d1).monomials if m[0] == 0][:n]
    second = monomial_basis(r, d2 - 1).monomials[:n]
    col1, col2 = [], []
    for i in range(n):
        keep = variant == "generic" or i < kappa
        col1.append(HomForm.monomial(first[i], 1, p) if keep else HomForm.zero(r, d1, p))
        e = list(second[i])
        e[0] += 1
        col2.append(HomForm.monomial(e, 1, p))
    return Morphism.from_columns(T, [col1, col2], p)
