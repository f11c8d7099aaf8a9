"""Semistability of morphisms over F_p by exhaustive subspace search.

For a family of source subspaces M_i' the smallest admissible target
subspace is the span of their images, so King's inequality only has to
be checked against that span:

    mu * dim N'  >=  sum_i lambda_i * dim M_i'      (> for stability)

for every family other than the zero family and the full family whose
image is everything.  Verdicts are statements over F_p only.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Sequence

from .errors import UnsupportedShape
from .exact import _rref_mod, format_rational, is_prime, kernel_basis, rank
from .morphisms import Morphism, Polarization, threshold_l, threshold_l_weak
from .subspaces import DEFAULT_BUDGET, all_subspaces, check_budget, count_subspaces, enumerate_subspaces

STABLE = "stable"
PROPERLY_SEMISTABLE = "properly-semistable"
UNSTABLE = "unstable"


def is_semistable_status(status: str) -> bool:
    return status in (STABLE, PROPERLY_SEMISTABLE)


@dataclass(frozen=True)
class SubspaceFamily:
    subspaces: tuple  # one RREF basis per source block
    image_dim: int

    @property
    def dims(self):
        return tuple(len(s) for s in self.subspaces)

    def to_json(self):
        return {
            "subspaces": [[list(row) for row in s] for s in self.subspaces],
            "dims": list(self.dims),
            "image_dim": self.image_dim,
        }


@dataclass
class StabilityVerdict:
    status: str
    prime: int
    witness: SubspaceFamily | None = None
    slack: Fraction | None = None
    margins: list = field(default_factory=list)

    @property
    def semistable(self) -> bool:
        return is_semistable_status(self.status)

    def to_json(self):
        return {
            "status": self.status,
            "prime": self.prime,
            "witness": self.witness.to_json() if self.witness else None,
            "min_slack": format_rational(self.slack) if self.slack is not None else None,
            "margins": [{"dims": list(d), "min_slack": format_rational(s)} for d, s in self.margins],
        }


def _check_prime(p):
    if p is None or not is_prime(p):
        raise ValueError("exhaustive subspace search needs a prime field")


def coefficient_vectors(blocks, p: int):
    """``C[i][j][h]`` = vector in F_p^n of the coefficients at monomial h of column j of block i."""
    return [[[tuple(x % p for x in col) for col in cols] for cols in blk.coefficient_columns()] for blk in blocks]


def image_vectors(C_block, basis, p: int) -> list:
    """Images phi(v * h) for basis vectors v and monomials h of one block."""
    if not basis:
        return []
    n = len(C_block[0][0]) if C_block and C_block[0] else 0
    out = []
    nmon = len(C_block[0]) if C_block else 0
    for v in basis:
        for h in range(nmon):
            w = [0] * n
            for j, x in enumerate(v):
                if x:
                    col = C_block[j][h]
                    w = [(a + x * b) % p for a, b in zip(w, col)]
            if any(w):
                out.append(w)
    return out


def _span(vectors, p):
    return [tuple(r) for r in _rref_mod(vectors, p)[0]] if vectors else []


def min_image_dim(phi: Morphism, family: Sequence, p: int | None = None) -> int:
    """dim of the span of phi_i(M_i' x H_i) in F_p^n."""
    p = phi.p if p is None else p
    _check_prime(p)
    C = coefficient_vectors(phi.blocks, p)
    vecs = []
    for Ci, basis in zip(C, family):
        vecs += image_vectors(Ci, basis, p)
    return rank(vecs, p) if vecs else 0


class _FamilyScanner:
    """Precomputes per-block images so that families cost one rank each."""

    def __init__(self, phi: Morphism, p: int, budget):
        T = phi.type
        total = 1
        for m in T.mults:
            total *= count_subspaces(m, p)
        check_budget(total, budget, "subspace families")
        C = coefficient_vectors(phi.blocks, p)
        self.p = p
        self.subs = [list(all_subspaces(m, p, budget=None)) for m in T.mults]
        self.images = [[_span(image_vectors(Ci, s, p), p) for s in subs] for Ci, subs in zip(C, self.subs)]

    def image_dim(self, idx) -> int:
        vecs = []
        for b, k in enumerate(idx):
            vecs += self.images[b][k]
        return rank(vecs, self.p) if vecs else 0


def _scan(phi: Morphism, P: Polarization, p: int, budget, first_indices=None):
    """Minimum slack over admissible families; ties keep the earliest family.

    Returns (best_slack, best_index, margins_by_dims).
    """
    T = phi.type
    sc = _FamilyScanner(phi, p, budget)
    ranges = [range(len(s)) for s in sc.subs]
    if first_indices is not None:
        ranges[0] = first_indices
    best = None
    margins = {}
    full = tuple(len(s) - 1 for s in sc.subs)
    for idx in product(*ranges):
        dims = tuple(len(sc.subs[b][k]) for b, k in enumerate(idx))
        if not any(dims):
            continue
        e = sc.image_dim(idx)
        if idx == full and e == T.n:
            continue
        slack = P.mu * e - sum((lam * d for lam, d in zip(P.lambdas, dims)), Fraction(0))
        if best is None or slack < best[0]:
            best = (slack, idx, e)
        if dims not in margins or slack < margins[dims]:
            margins[dims] = slack
    return best, margins


def _scan_chunk(args):
    phi, P, p, budget, chunk = args
    return _scan(phi, P, p, budget, chunk)


def decide_semistable(phi: Morphism, P: Polarization, p: int | None = None, budget=DEFAULT_BUDGET, jobs: int = 1) -> StabilityVerdict:
    """King's criterion over F_p with the image-span reduction.

    Witness: the family with the least slack; among equals, the first in
    enumeration order (block by block, subspaces by dimension then RREF).
    """
    p = phi.p if p is None else p
    _check_prime(p)
    if phi.p != p:
        phi = phi.reduce(p)
    P.validate(phi.type)
    if jobs > 1:
        n_first = count_subspaces(phi.type.mults[0], p)
        chunks = [list(range(k, n_first, jobs)) for k in range(jobs)]
        chunks = [c for c in chunks if c]
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            parts = list(ex.map(_scan_chunk, [(phi, P, p, budget, c) for c in chunks]))
        best, margins = None, {}
        for b, mg in parts:
            if b is not None and (best is None or (b[0], b[1]) < (best[0], best[1])):
                best = b
            for k, v in mg.items():
                if k not in margins or v < margins[k]:
                    margins[k] = v
    else:
        best, margins = _scan(phi, P, p, budget)
    if best is None:
        raise UnsupportedShape("no admissible family exists")
    slack, idx, e = best
    subs = [list(all_subspaces(m, p, budget=None)) for m in phi.type.mults]
    witness = SubspaceFamily(tuple(subs[b][k] for b, k in enumerate(idx)), e)
    status = UNSTABLE if slack < 0 else PROPERLY_SEMISTABLE if slack == 0 else STABLE
    return StabilityVerdict(status, p, witness, slack, sorted(margins.items()))


# ---------------------------------------------------------------------------
# block forms, checked through row subspaces of the target


@dataclass(frozen=True)
class BlockFormWitness:
    kappas: tuple
    l: int
    rows: tuple  # RREF basis of an l-dimensional subspace R of (F_p^n)*
    kernels: tuple  # per block, a basis of {v : r . phi_i(v h) = 0 for r in R}

    def to_json(self):
        return {
            "kappas": list(self.kappas),
            "l": self.l,
            "rows": [list(r) for r in self.rows],
            "kernels": [[list(v) for v in K] for K in self.kernels],
        }


def _annihilated(C_block, R, m: int, p: int):
    """Matrix whose kernel is {v in F_p^m : r . phi(v h) = 0 for all r in R, h}."""
    nmon = len(C_block[0]) if m else 0
    A = []
    for r in R:
        for h in range(nmon):
            A.append([sum(a * b for a, b in zip(r, C_block[j][h])) % p for j in range(m)])
    return A


def block_form_reachable(phi: Morphism, P: Polarization, kappas: Sequence[int], p: int | None = None,
                         budget=DEFAULT_BUDGET, strict: bool = True):
    """Whether phi is equivalent to a matrix with an l x (m_i - kappa_i) zero block in every block i.

    With ``strict`` (semistability), l is the least integer with
    l mu > sum kappa_i lambda_i; otherwise (stability) the least l >= 1
    with l mu >= sum kappa_i lambda_i, and kappa = m is skipped.  The
    search runs over l-dimensional row spaces R: such a block form exists
    iff for some R every block has a kernel of dimension >= m_i - kappa_i.
    Returns (reachable, witness or None).
    """
    p = phi.p if p is None else p
    _check_prime(p)
    if phi.p != p:
        phi = phi.reduce(p)
    T = phi.type
    kappas = tuple(kappas)
    if strict:
        l = threshold_l(P, kappas, T.n)
    else:
        if kappas == T.mults:
            return False, None
        l = max(1, threshold_l_weak(P, kappas, T.n))
    if l > T.n:
        return False, None
    C = coefficient_vectors(phi.blocks, p)
    for R in enumerate_subspaces(T.n, l, p, budget):
        kernels = []
        for Ci, m, k in zip(C, T.mults, kappas):
            A = _annihilated(Ci, R, m, p)
            rk = len(_rref_mod(A, p)[1]) if A else 0
            if rk > k:
                break
            kernels.append(tuple(tuple(v) for v in kernel_basis(A, m, p)))
        else:
            return True, BlockFormWitness(kappas, l, R, tuple(kernels))
    return False, None


def block_form_status(phi: Morphism, P: Polarization, p: int | None = None, budget=DEFAULT_BUDGET):
    """Verdict from the block-form characterization alone.

    Returns (status, witness) where witness is the first reachable block
    form in kappa order.
    """
    T = phi.type
    all_kappas = list(product(*(range(m + 1) for m in T.mults)))
    for k in all_kappas:
        ok, w = block_form_reachable(phi, P, k, p, budget, strict=True)
        if ok:
            return UNSTABLE, w
    for k in all_kappas:
        ok, w = block_form_reachable(phi, P, k, p, budget, strict=False)
        if ok:
            return PROPERLY_SEMISTABLE, w
    return STABLE, None
