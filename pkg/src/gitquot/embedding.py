"""The reductive embedding phi -> (xi, gamma(phi)) and its stability tests.

Type (2,1): P1 = M1 + M2 (x) A21 and P2 = M2, with A21 = S^{d1-d2}.
xi is the p1 x p2 matrix over A21 whose column j carries the monomial
basis X_1..X_a of A21 in rows m1+(j-1)a+1 .. m1+ja, and

    gamma(phi) = [phi' | phi_{m1+1} X | ... | phi_{m1+m2} X].

Type (3,1), phi = (phi^1, phi^2, phi^3) on m O(-d1) + O(-d2) + O(-d3):
P1 = M + A21 + A31, P2 = k + A32, P3 = k and

    xi2 = [[0, 0], [U, 0], [0, W]],  xi3 = [0, V_1, ..., V_a32]^T,
    gamma(phi) = [phi^1 | phi^2 U_1 .. phi^2 U_a21 | phi^3 W_1 .. phi^3 W_a31],

where U, V, W are the lex monomial bases of A21, A32, A31 and
W_kj = W_k / V_j when V_j divides W_k, else 0.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import ceil, floor

import numpy as np

from .errors import GateFailure, UnsupportedShape
from .exact import _rref_mod, binom, format_rational, kernel_basis
from .forms import FormMatrix, HomForm, monomial_basis, multiply
from .king import PROPERLY_SEMISTABLE, STABLE, UNSTABLE, _check_prime, _span, coefficient_vectors, image_vectors
from .morphisms import Morphism, MorphismType, TildePolarization
from .subspaces import (
    DEFAULT_BUDGET,
    all_subspaces,
    check_budget,
    count_subspaces,
    enumerate_subspaces,
    gaussian_binomial,
    superspaces,
)


@dataclass
class EmbeddedPoint:
    kind: str  # "embedded21" or "embedded31"
    type: MorphismType
    gamma: FormMatrix
    xi: FormMatrix | None = None
    xi2: FormMatrix | None = None
    xi3: FormMatrix | None = None

    @property
    def p1(self) -> int:
        return self.gamma.ncols

    @property
    def maps(self):
        """The quiver maps from the last vertex up: [xi] or [xi3, xi2]."""
        return [self.xi] if self.kind == "embedded21" else [self.xi3, self.xi2]

    def to_json(self):
        out = {"kind": self.kind, "type": self.type.to_json(), "gamma": self.gamma.to_json()}
        if self.kind == "embedded21":
            out["xi"] = self.xi.to_json()
        else:
            out["xi2"] = self.xi2.to_json()
            out["xi3"] = self.xi3.to_json()
        return out

    def reduce(self, p: int) -> "EmbeddedPoint":
        """Image modulo p of an embedded point with integral coefficients."""

        def red(M):
            if M is None:
                return None
            rows = [[HomForm(e.r, e.degree, e.coeffs, p) for e in row] for row in M.entries]
            return FormMatrix(rows, M.r, M.degree, p)

        return EmbeddedPoint(self.kind, self.type, red(self.gamma), red(self.xi), red(self.xi2), red(self.xi3))


def _basis_forms(r, d, p):
    return [HomForm.monomial(m, 1, p) for m in monomial_basis(r, d).monomials]


def build_embedding(phi: Morphism) -> EmbeddedPoint:
    T = phi.type
    if T.kind != "21":
        raise UnsupportedShape("build_embedding handles two-block types")
    m1, m2 = T.mults
    d1, d2 = T.degrees
    r, p, n = T.r, phi.p, T.n
    X = _basis_forms(r, d1 - d2, p)
    a = len(X)
    p1 = m1 + m2 * a
    zero_a = HomForm.zero(r, d1 - d2, p)
    xi = [[zero_a] * m2 for _ in range(p1)]
    for j in range(m2):
        for t in range(a):
            xi[m1 + j * a + t] = list(xi[m1 + j * a + t])
            xi[m1 + j * a + t][j] = X[t]
    first, second = phi.blocks
    rows = []
    for i in range(n):
        row = [first[i, j] for j in range(m1)]
        for j in range(m2):
            row += [multiply(second[i, j], X[t]) for t in range(a)]
        rows.append(row)
    gamma = FormMatrix(rows, r, d1, p)
    return EmbeddedPoint("embedded21", T, gamma, xi=FormMatrix(xi, r, d1 - d2, p))


def division_matrix(r: int, top: int, bottom: int, p=None) -> FormMatrix:
    """W_kj = W_k / V_j for W_k in S^top and V_j in S^bottom (zero if V_j does not divide W_k)."""
    Ws = monomial_basis(r, top).monomials
    Vs = monomial_basis(r, bottom).monomials
    rows = []
    for w in Ws:
        row = []
        for v in Vs:
            q = tuple(x - y for x, y in zip(w, v))
            row.append(HomForm.monomial(q, 1, p) if min(q) >= 0 else HomForm.zero(r, top - bottom, p))
        rows.append(row)
    return FormMatrix(rows, r, top - bottom, p)


def build_embedding_31(phi: Morphism) -> EmbeddedPoint:
    T = phi.type
    if T.kind != "31":
        raise UnsupportedShape("build_embedding_31 handles m O(-d1) + O(-d2) + O(-d3) types")
    m = T.mults[0]
    d1, d2, d3 = T.degrees
    r, p, n = T.r, phi.p, T.n
    U = _basis_forms(r, d1 - d2, p)
    Wb = _basis_forms(r, d1 - d3, p)
    V = _basis_forms(r, d2 - d3, p)
    a21, a31, a32 = len(U), len(Wb), len(V)
    e12 = d1 - d2
    z12 = HomForm.zero(r, e12, p)
    W = division_matrix(r, d1 - d3, d2 - d3, p)
    xi2 = [[z12] * (1 + a32) for _ in range(m)]
    xi2 += [[U[i]] + [z12] * a32 for i in range(a21)]
    xi2 += [[z12] + W.entries[k] for k in range(a31)]
    xi3 = [[HomForm.zero(r, d2 - d3, p)]] + [[V[j]] for j in range(a32)]
    b1, b2, b3 = phi.blocks
    rows = []
    for i in range(n):
        row = [b1[i, j] for j in range(m)]
        row += [multiply(b2[i, 0], u) for u in U]
        row += [multiply(b3[i, 0], w) for w in Wb]
        rows.append(row)
    return EmbeddedPoint(
        "embedded31",
        T,
        FormMatrix(rows, r, d1, p),
        xi2=FormMatrix(xi2, r, e12, p),
        xi3=FormMatrix(xi3, r, d2 - d3, p),
    )


def embed(phi: Morphism) -> EmbeddedPoint:
    return build_embedding(phi) if phi.type.kind == "21" else build_embedding_31(phi)


# ---------------------------------------------------------------------------
# omega and the zero-block bounds


def omega_closed_form(r: int, e: int) -> int:
    """2 dim S^e - dim S^{e-1} in r+1 variables, with e = d1 - d2."""
    return 2 * binom(e + r, r) - binom(e + r - 1, r)


def omega_recount(W: FormMatrix) -> int:
    """Least number of nonzero rows among pairs of columns of W."""
    if W.ncols < 2:
        raise ValueError("omega needs at least two columns")
    best = None
    for i, j in combinations(range(W.ncols), 2):
        cnt = sum(1 for row in W.entries if not row[i].is_zero() or not row[j].is_zero())
        best = cnt if best is None else min(best, cnt)
    return best


def omega(T: MorphismType) -> tuple[int, int]:
    """(closed form, recount from W) for an (m,1,1) type with a32 >= 2."""
    if T.kind != "31":
        raise UnsupportedShape("omega is defined for (m,1,1) three-block types")
    d1, d2, d3 = T.degrees
    if T.a32 < 2:
        raise UnsupportedShape("omega needs a32 >= 2")
    W = division_matrix(T.r, d1 - d3, d2 - d3)
    return omega_closed_form(T.r, d1 - d2), omega_recount(W)


def _coefficient_tensor(W: FormMatrix) -> np.ndarray:
    """Array of shape (rows, cols, dim of entry forms) with integer coefficients."""
    return np.array(
        [[[int(c) for c in e.coeffs] for e in row] for row in W.entries], dtype=np.int64
    )


def _max_zero_rows_exact(Wt: np.ndarray, c: int, p: int) -> int:
    """Largest number of independent row combinations killing some c-dim column space."""
    rows, cols, a = Wt.shape
    best = 0
    for B in enumerate_subspaces(cols, c, p, budget=None):
        Bm = np.array(B, dtype=np.int64).T  # cols x c
        WB = np.einsum("kjt,jc->kct", Wt, Bm) % p  # rows x c x a
        M = WB.reshape(rows, c * a).tolist()
        rk = len(_rref_mod(M, p)[1]) if any(any(x) for x in M) else 0
        best = max(best, rows - rk)
    return best


def _random_invertible(n: int, p: int, rng: np.random.Generator) -> np.ndarray:
    while True:
        A = rng.integers(0, p, size=(n, n))
        if len(_rref_mod(A.tolist(), p)[1]) == n:
            return A


def _max_zero_block_entries(Wp: np.ndarray, c: int) -> int:
    """Largest number of rows of a zero submatrix with c columns (actual entries)."""
    zero = ~Wp.any(axis=2)  # rows x cols, True where the form is 0
    best = 0
    for cols in combinations(range(Wp.shape[1]), c):
        best = max(best, int(zero[:, list(cols)].all(axis=1).sum()))
    return best


@dataclass
class ZeroBlockReport:
    type: MorphismType
    prime: int
    trials: int
    seed: int
    omega: int
    rows: list = field(default_factory=list)  # dicts per column count

    @property
    def ok(self) -> bool:
        return all(r["ok"] for r in self.rows)

    def to_json(self):
        return {
            "type": self.type.to_json(),
            "prime": self.prime,
            "trials": self.trials,
            "seed": self.seed,
            "omega": self.omega,
            "ok": self.ok,
            "columns": self.rows,
        }


def verify_zero_block_remarks(T: MorphismType, p: int = 2, trials: int = 10_000, seed: int = 0) -> ZeroBlockReport:
    """Search for zero submatrices of W after row and column operations.

    For each column count c the exact maximum (over all c-dim column
    spaces, of the dimension of the row combinations killing them) and
    the largest block seen in ``trials`` random transformations
    A W B are compared with the bounds: c = 1 gives a31 - a21, c = a32 - 1
    gives a21 and c >= 2 gives a31 - omega.
    """
    _check_prime(p)
    if T.kind != "31":
        raise UnsupportedShape("zero-block bounds are stated for (m,1,1) types")
    d1, d2, d3 = T.degrees
    W = division_matrix(T.r, d1 - d3, d2 - d3, p)
    Wt = _coefficient_tensor(W)
    a21, a31, a32 = T.a21, T.a31, T.a32
    om = omega_closed_form(T.r, d1 - d2) if a32 >= 2 else None
    rng = np.random.default_rng(seed)
    random_best = {c: 0 for c in range(1, a32 + 1)}
    for _ in range(trials):
        A = _random_invertible(a31, p, rng)
        B = _random_invertible(a32, p, rng)
        Wp = np.einsum("ik,kjt,jl->ilt", A, Wt, B) % p
        for c in range(1, a32 + 1):
            random_best[c] = max(random_best[c], _max_zero_block_entries(Wp, c))
    rep = ZeroBlockReport(T, p, trials, seed, om)
    for c in range(1, a32 + 1):
        bounds = {}
        if c == 1:
            bounds["single column"] = a31 - a21
        if c == a32 - 1:
            bounds["a32-1 columns"] = a21
        if c >= 2:
            bounds["two or more columns"] = a31 - om
        exact = _max_zero_rows_exact(Wt, c, p)
        bound = min(bounds.values()) if bounds else None
        ok = bound is None or (exact <= bound and random_best[c] <= bound)
        rep.rows.append({
            "columns": c,
            "bounds": bounds,
            "exact_max": exact,
            "random_max": random_best[c],
            "ok": ok,
        })
    return rep


# ---------------------------------------------------------------------------
# tilde-side stability


@dataclass
class TildeVerdict:
    status: str
    prime: int
    method: str
    condition: str | None = None
    witness: dict | None = None
    slack: Fraction | None = None

    @property
    def semistable(self) -> bool:
        return self.status in (STABLE, PROPERLY_SEMISTABLE)

    def to_json(self):
        return {
            "status": self.status,
            "prime": self.prime,
            "method": self.method,
            "condition": self.condition,
            "witness": self.witness,
            "min_slack": format_rational(self.slack) if self.slack is not None else None,
        }


def check_gates(T: MorphismType, TP: TildePolarization):
    failed = [g for g in TP.gates(T) if not g.holds]
    if failed:
        raise GateFailure("; ".join(g.label for g in failed))


def _vertex_dims(E: EmbeddedPoint):
    """Dimensions of the quiver vertices from the last one up to P1."""
    if E.kind == "embedded21":
        return [E.xi.ncols, E.p1]
    return [1, E.xi2.ncols, E.p1]


def tilde_search_size(E: EmbeddedPoint, p: int) -> int:
    """Upper bound for the number of subspace chains visited by tilde_decide."""
    total = 1
    for d in _vertex_dims(E):
        total *= count_subspaces(d, p)
    return total


def tilde_decide(E: EmbeddedPoint, TP: TildePolarization, p: int | None = None, budget=DEFAULT_BUDGET) -> TildeVerdict:
    """Exhaustive King test on the embedded side.

    Chains of subspaces are built from the last vertex up: each subspace
    ranges over all subspaces containing the image of the previous one
    under the corresponding xi; the target subspace is the gamma-image.
    Inequality: beta dim N' >= alpha_1 dim P1' + alpha_2 dim P2' (+ alpha_3 dim P3').
    """
    p = E.gamma.p if p is None else p
    _check_prime(p)
    if E.gamma.p != p:
        E = E.reduce(p)
    T = E.type
    check_gates(T, TP)
    dims = _vertex_dims(E)
    check_budget(tilde_search_size(E, p), budget, "tilde subspace chains")
    maps = E.maps
    Cmaps = [coefficient_vectors([M], p)[0] for M in maps]
    Cg = coefficient_vectors([E.gamma], p)[0]
    alphas = list(reversed(TP.alphas))  # weights in vertex order (last vertex first)
    n = T.n
    best = None
    zero = Fraction(0)

    def rec(level, prev, chain):
        nonlocal best
        d = dims[level]
        if level == 0:
            candidates = all_subspaces(d, p, budget=None)
        else:
            forced = _span(image_vectors(Cmaps[level - 1], prev, p), p)
            candidates = (s for k in range(len(forced), d + 1) for s in superspaces(tuple(forced), d, k, p, budget=None))
        for S in candidates:
            ch = chain + [S]
            if level + 1 < len(dims):
                rec(level + 1, S, ch)
                continue
            sizes = [len(s) for s in ch]
            if not any(sizes):
                continue
            e = len(_span(image_vectors(Cg, S, p), p))
            if sizes == dims and e == n:
                continue
            slack = TP.beta * e - sum((a * s for a, s in zip(alphas, sizes)), zero)
            if best is None or slack < best[0]:
                best = (slack, [list(map(list, s)) for s in ch], e)

    rec(0, (), [])
    slack, chain, e = best
    status = UNSTABLE if slack < 0 else PROPERLY_SEMISTABLE if slack == 0 else STABLE
    names = ["P2", "P1"] if E.kind == "embedded21" else ["P3", "P2", "P1"]
    witness = {name: s for name, s in zip(names, chain)}
    witness["image_dim"] = e
    return TildeVerdict(status, p, "exhaustive", None, witness, slack)


def reduced_cases(T: MorphismType, TP: TildePolarization) -> list[tuple[str, int, Fraction]]:
    """(label, k, bound) meaning: gamma must not kill a codim-k subspace into n - l dims, l/n > bound."""
    a1 = TP.alphas[0]
    out = []
    if T.kind == "21":
        m1, m2 = T.mults
        a = T.a21
        a2 = TP.alphas[1]
        for i in range(m2 + 1):
            for k in range(max(0, m1 + (i - 1) * a + 1), m1 + i * a + 1):
                out.append((f"i={i}", k, k * a1 + i * a2))
        return out
    if T.kind == "31":
        m = T.mults[0]
        a21, a31, a32 = T.a21, T.a31, T.a32
        a2, a3 = TP.alphas[1], TP.alphas[2]
        om = omega_closed_form(T.r, T.degrees[0] - T.degrees[1]) if a32 >= 2 else a21
        for k in range(0, m + 1):
            out.append(("first", k, k * a1))
        for k in range(m + 1, m + a21 + 1):
            out.append(("second", k, k * a1 + a2))
        for i in range(2, a32):
            for k in range(m + a21 + 1, m + a21 + a31 - om + 1):
                out.append((f"third i={i}", k, k * a1 + i * a2 + a3))
        for k in range(m + a21 + a31 - om + 1, m + a31 + 1):
            out.append(("fourth", k, k * a1 + a32 * a2 + a3))
        for k in range(m + a31 + 1, m + a21 + a31):
            out.append(("fifth", k, k * a1 + (a32 + 1) * a2 + a3))
        return out
    raise UnsupportedShape("reduced conditions exist for (2,1) and (3,1) types")


def _annihilated_gamma(Cg, R, p1: int, p: int):
    nmon = len(Cg[0])
    return [[sum(a * b for a, b in zip(r, Cg[j][h])) % p for j in range(p1)] for r in R for h in range(nmon)]


def _reachable(Cg, p1: int, n: int, k: int, l: int, p: int, budget):
    """Is there a subspace of dim p1 - k whose gamma-image has dim <= n - l?

    Uses whichever side has fewer subspaces: codim-k subspaces of P1, or
    l-dimensional row spaces R whose annihilated subspace has dim >= p1 - k.
    """
    if l > n:
        return None
    if l <= 0:
        return {"P1": [], "rows": []}
    src = gaussian_binomial(p1, p1 - k, p)
    dual = gaussian_binomial(n, l, p)
    if dual <= src:
        check_budget(dual, budget, "row subspaces")
        for R in enumerate_subspaces(n, l, p, budget=None):
            A = _annihilated_gamma(Cg, R, p1, p)
            rk = len(_rref_mod(A, p)[1]) if any(any(x) for x in A) else 0
            if p1 - rk >= p1 - k:
                K = kernel_basis(A, p1, p)
                return {"rows": [list(r) for r in R], "P1": [list(v) for v in K]}
        return None
    check_budget(src, budget, "source subspaces")
    for S in enumerate_subspaces(p1, p1 - k, p, budget=None):
        e = len(_span(image_vectors(Cg, S, p), p))
        if e <= n - l:
            return {"P1": [list(v) for v in S], "image_dim": e}
    return None


def check_reduced(E: EmbeddedPoint, TP: TildePolarization, p: int | None = None, budget=DEFAULT_BUDGET) -> TildeVerdict:
    """Tilde semistability through the reduced gamma-only conditions.

    For each listed (k, bound): unstable if some codim-k subspace of P1 is
    sent by gamma into a subspace of dim n - l with l the least integer,
    l/n > bound.  Equality cases (least l >= 1 with l/n >= bound) decide
    between stable and properly semistable.
    """
    p = E.gamma.p if p is None else p
    _check_prime(p)
    if E.gamma.p != p:
        E = E.reduce(p)
    T = E.type
    check_gates(T, TP)
    n, p1 = T.n, E.p1
    Cg = coefficient_vectors([E.gamma], p)[0]
    cases = reduced_cases(T, TP)
    beta = TP.beta
    for label, k, bound in cases:
        l = floor(bound / beta) + 1
        w = _reachable(Cg, p1, n, k, l, p, budget)
        if w is not None:
            return TildeVerdict(UNSTABLE, p, "reduced", f"{label} k={k}", dict(w, l=l, k=k))
    for label, k, bound in cases:
        l = max(1, ceil(bound / beta))
        if k == p1:
            continue
        w = _reachable(Cg, p1, n, k, l, p, budget)
        if w is not None:
            return TildeVerdict(PROPERLY_SEMISTABLE, p, "reduced", f"{label} k={k}", dict(w, l=l, k=k))
    return TildeVerdict(STABLE, p, "reduced")
