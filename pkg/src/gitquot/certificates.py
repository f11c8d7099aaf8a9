"""Exact evaluation of the quotient-existence criteria.

Each ``certify_*`` function evaluates one inequality system over the
rationals and returns a :class:`CertificateReport`.  A report is
"certified" only when every condition holds, the polarization is off all
walls and the type is not degenerate; the wording is "certified by the
hypotheses of claim X", never a construction of the quotient itself.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import ceil, floor
from typing import Mapping

from .conditions import Condition, cond
from .errors import Degenerate, MissingConstant, UnsupportedShape
from .exact import binom, format_rational
from .morphisms import MorphismType, Polarization, TildePolarization, is_degenerate, on_wall

CERTIFIED = "certified"
CONDITIONAL = "conditionally-certified"
NOT_CERTIFIED = "not-certified"
INAPPLICABLE = "inapplicable"


@dataclass
class CertificateReport:
    claim: str
    type: MorphismType
    polarization: Polarization | None
    conditions: list = field(default_factory=list)
    # at least one alternative must hold in full (empty: no alternatives)
    alternatives: dict = field(default_factory=dict)
    nonsingular: bool = True
    degenerate: bool = False
    applicable: bool = True
    reason: str = ""
    constants: dict = field(default_factory=dict)  # name -> {"value", "status"}
    comparisons: list = field(default_factory=list)  # informational only
    extras: dict = field(default_factory=dict)

    @property
    def conditions_hold(self) -> bool:
        if not all(c.holds for c in self.conditions):
            return False
        if self.alternatives:
            return any(all(c.holds for c in group) for group in self.alternatives.values())
        return True

    @property
    def overall(self) -> str:
        if not self.applicable:
            return INAPPLICABLE
        if not (self.conditions_hold and self.nonsingular and not self.degenerate):
            return NOT_CERTIFIED
        if any(c["status"] != "exhaustive" for c in self.constants.values()):
            return CONDITIONAL
        return CERTIFIED

    @property
    def certified(self) -> bool:
        return self.overall in (CERTIFIED, CONDITIONAL)

    @property
    def verdict(self) -> str:
        o = self.overall
        if o == CERTIFIED:
            return f"certified by the hypotheses of claim {self.claim}"
        if o == CONDITIONAL:
            return f"certified by the hypotheses of claim {self.claim}, assuming the listed constants"
        if o == INAPPLICABLE:
            return f"claim {self.claim} does not apply: {self.reason}"
        return f"not certified by claim {self.claim}"

    def to_json(self):
        out = {
            "claim": self.claim,
            "type": self.type.to_json(),
            "polarization": self.polarization.to_json() if self.polarization is not None else None,
            "overall": self.overall,
            "verdict": self.verdict,
            "nonsingular": self.nonsingular,
            "degenerate": self.degenerate,
            "conditions": [c.to_json() for c in self.conditions],
            "alternatives": {k: [c.to_json() for c in v] for k, v in self.alternatives.items()},
            "comparisons": [c.to_json() for c in self.comparisons],
        }
        if self.constants:
            out["constants"] = self.constants
        if self.reason:
            out["reason"] = self.reason
        if self.extras:
            out["extras"] = self.extras
        return out


def _start(claim: str, T: MorphismType, P: Polarization | None) -> CertificateReport:
    degenerate, reason = is_degenerate(T)
    if degenerate:
        raise Degenerate(reason)
    rep = CertificateReport(claim, T, None)
    if P is not None:
        P = P.normalized(T)
        P.validate(T)
        rep.polarization = P
        rep.nonsingular = not on_wall(T, P)
    return rep


def _inapplicable(rep: CertificateReport, reason: str) -> CertificateReport:
    rep.applicable = False
    rep.reason = reason
    return rep


# ---------------------------------------------------------------------------
# general two-block criterion with the constants k(i, j), k(i)


def claim33_constant_names(T: MorphismType) -> list[str]:
    m1, m2 = T.mults
    a = T.a21
    names = [f"k({i},{m2 * a - i * a - m1})" for i in range(1, m2)]
    names += [f"k({i})" for i in range(2, m2 + 1)]
    names += [f"k({i},{m2 * a - i * a - a + 1})" for i in range(1, m2)]
    return list(dict.fromkeys(names))


def _constant(constants: Mapping, name: str):
    if name not in constants:
        raise MissingConstant(f"{name} is needed but was neither computed nor supplied")
    c = constants[name]
    if isinstance(c, int):
        return c, "assumed"
    if isinstance(c, Mapping):
        return int(c["value"]), c.get("status", "assumed")
    return int(c.value), c.status


def certify_33(T: MorphismType, P: Polarization, constants: Mapping) -> CertificateReport:
    """General two-block criterion with linear-algebra constants.

    ``constants`` maps names like "k(2,5)" or "k(3)" to a ConstantResult,
    a dict {"value", "status"} or a bare int (taken as assumed).
    """
    if T.nblocks != 2:
        raise UnsupportedShape("needs a two-block type")
    rep = _start("3.3", T, P)
    m1, m2 = T.mults
    a = T.a21
    if m1 >= a:
        return _inapplicable(rep, f"m1 = {m1} is not below a = {a}")
    n = T.n
    l1, l2 = rep.polarization.lambdas
    for name in claim33_constant_names(T):
        value, status = _constant(constants, name)
        rep.constants[name] = {"value": value, "status": status}

    def k(name):
        return rep.constants[name]["value"]

    rep.conditions.append(cond("lambda_2 > a lambda_1", l2, ">", a * l1))
    for i in range(1, m2):
        name = f"k({i},{m2 * a - i * a - m1})"
        rep.conditions.append(cond(f"{i} n lambda_2 >= n m1 lambda_1 + {name}", i * n * l2, ">=", n * m1 * l1 + k(name)))
    for i in range(2, m2 + 1):
        name = f"k({i})"
        rep.conditions.append(cond(f"{i} n lambda_2 >= n m1 lambda_1 + {name}", i * n * l2, ">=", n * m1 * l1 + k(name)))
    for i in range(1, m2):
        name = f"k({i},{m2 * a - i * a - a + 1})"
        rep.conditions.append(cond(f"n lambda_1 + {i} n lambda_2 >= {name}", n * l1 + i * n * l2, ">=", k(name)))
    return rep


# ---------------------------------------------------------------------------
# m O(-d1) + 2 O(-d2)


def certify_42_43(T: MorphismType, P: Polarization) -> CertificateReport:
    if T.nblocks != 2 or T.mults[1] != 2:
        raise UnsupportedShape("needs a type m O(-d1) + 2 O(-d2)")
    m = T.mults[0]
    r, n = T.r, T.n
    d1, d2 = T.degrees
    e = d1 - d2
    claim = "4.3" if m == 1 and r >= 2 else "4.2"
    rep = _start(claim, T, P)
    l1, l2 = rep.polarization.lambdas
    a = T.a21
    h = binom(r + d2 - 1, r)
    rep.conditions += [
        cond("lambda_1 > 0", l1, ">", 0),
        cond("lambda_1 < 1/(2a+m)", l1, "<", Fraction(1, 2 * a + m)),
    ]
    rep.alternatives["i"] = [
        cond("m < dim S^e U", m, "<", binom(r - 1 + e, r - 1)),
        cond("lambda_1 <= (n - dim S^(d2-1)) / ((a+m-1) n)", l1, "<=", Fraction(n - h, (a + m - 1) * n)),
    ]
    rep.alternatives["ii"] = [
        cond("m < dim S^e", m, "<", binom(r + e, r)),
        cond("lambda_1 <= (n - 2 dim S^(d2-1)) / (3 m n)", l1, "<=", Fraction(n - 2 * h, 3 * m * n)),
    ]
    rep.comparisons.append(
        cond("comparison bound: lambda_2 >= dim S^d2 / n", l2, ">=", Fraction(binom(r + d2, r), n),
             note="earlier sufficient condition; informational")
    )
    return rep


# ---------------------------------------------------------------------------
# O(-d-1) + 3 O(-d) on P^2


def _plane_shape(T: MorphismType, mults, e):
    return T.r == 2 and T.nblocks == 2 and T.mults == mults and T.degrees[0] - T.degrees[1] == e


def certify_51(T: MorphismType, P: Polarization) -> CertificateReport:
    if not _plane_shape(T, (1, 3), 1):
        raise UnsupportedShape("needs O(-d-1) + 3 O(-d) on P^2")
    rep = _start("5.1", T, P)
    d, n = T.degrees[1], T.n
    l1 = rep.polarization.lambdas[0]
    rep.conditions += [
        cond("lambda_1 > 0", l1, ">", 0),
        cond("lambda_1 < 1/10", l1, "<", Fraction(1, 10)),
        cond("lambda_1 <= 2/5 - 3(d^2+d)/(10n)", l1, "<=", Fraction(2, 5) - Fraction(3 * (d * d + d), 10 * n)),
        cond("lambda_1 <= 1 - 3(d^2+3d)/(4n)", l1, "<=", 1 - Fraction(3 * (d * d + 3 * d), 4 * n)),
        cond("lambda_1 >= -1/2 + 3(d^2+d)/(4n)", l1, ">=", Fraction(-1, 2) + Fraction(3 * (d * d + d), 4 * n)),
        cond("lambda_1 >= -2 + 3(d^2+2d)/n", l1, ">=", -2 + Fraction(3 * (d * d + 2 * d), n)),
    ]
    return rep


# ---------------------------------------------------------------------------
# m O(-d-1) + 3 O(-1) on P^2


def _ab(d: int) -> tuple[int, int]:
    return binom(d + 2, 2), binom(d + 1, 2)


def linear_three_checklist(n: int) -> list[Condition]:
    """Necessary nonemptiness conditions on n (independent of m and d)."""
    l0 = 1
    l1 = floor(Fraction(n + 1, 3)) + 1
    l2 = floor(Fraction(4 * n + 1, 6)) + 1
    return [
        cond(f"n < l_(m,0) + 9 (l_(m,0)={l0})", n, "<", l0 + 9),
        cond(f"n < l_(m,1) + 6 (l_(m,1)={l1})", n, "<", l1 + 6),
        cond(f"n < l_(m,2) + 3 (l_(m,2)={l2})", n, "<", l2 + 3),
    ]


def certify_61(T: MorphismType, P: Polarization) -> CertificateReport:
    if not (T.r == 2 and T.nblocks == 2 and T.mults[1] == 3 and T.degrees[1] == 1):
        raise UnsupportedShape("needs m O(-d-1) + 3 O(-1) on P^2")
    rep = _start("6.1", T, P)
    m, n = T.mults[0], T.n
    d = T.degrees[0] - 1
    a, b = _ab(d)
    if m >= a:
        return _inapplicable(rep, f"m = {m} is not below a = {a}")
    l1 = rep.polarization.lambdas[0]
    rep.conditions += [
        cond("lambda_1 > 0", l1, ">", 0),
        cond("lambda_1 < 1/(3a+m)", l1, "<", Fraction(1, 3 * a + m)),
        cond("lambda_1 (4m - 3a + 3b) <= (n-3)/n", l1 * (4 * m - 3 * a + 3 * b), "<=", Fraction(n - 3, n)),
        cond("lambda_1 <= (n-6)/(m n)", l1, "<=", Fraction(n - 6, m * n)),
    ]
    rep.extras["nonemptiness_checklist"] = [c.to_json() for c in linear_three_checklist(n)]
    return rep


def linear_three_chamber_conditions(d: int, m: int, n: int) -> list[Condition]:
    """The claim's conditions at the lower end of the chamber (1/(2mn), 1/((2m-1)n)).

    Upper bounds on lambda_1 can be met inside the chamber exactly when
    they hold at its lower end; this gives
    3a/(2m) + 1/2 < n, 5 <= n + 3(a-b)/(2m) and 7 <= n.
    """
    a, b = _ab(d)
    lo = Fraction(1, 2 * m * n)
    return [
        cond("3a/(2m) + 1/2 < n", Fraction(3 * a, 2 * m) + Fraction(1, 2), "<", n,
             note="lambda_1 < 1/(3a+m) at the chamber's lower end"),
        cond("5 <= n + 3(a-b)/(2m)", 5, "<=", n + Fraction(3 * (a - b), 2 * m),
             note=f"lambda_1 (4m-3a+3b) <= (n-3)/n at lambda_1 = {format_rational(lo)}"),
        cond("7 <= n", 7, "<=", n, note="lambda_1 <= (n-6)/(mn) at the chamber's lower end"),
    ]


def linear_three_window(d: int, m: int | None = None, n_max: int = 60) -> dict:
    """Values of n meeting the chamber conditions and the nonemptiness checklist.

    ``m`` defaults to floor(a/2).  Degenerate (n, m) pairs are listed
    separately; they satisfy the inequalities but admit no certificate.
    """
    a, _ = _ab(d)
    m = a // 2 if m is None else m
    ok = []
    for n in range(1, n_max + 1):
        conds = linear_three_chamber_conditions(d, m, n) + linear_three_checklist(n)
        if all(c.holds for c in conds):
            ok.append(n)
    degenerate = [n for n in ok if m % 3 == 0 and n % 3 == 0]
    return {"d": d, "m": m, "a": a, "window": ok, "degenerate": degenerate}


# ---------------------------------------------------------------------------
# O(-d-2) + 3 O(-d) on P^2


def plane_gap2_window(d: int) -> dict:
    """Necessary range of n: (19/13)(b + B) < n < (19/6) B."""
    B, b = _ab(d)
    lo = Fraction(19, 13) * (b + B)
    hi = Fraction(19, 6) * B
    values = list(range(floor(lo) + 1, ceil(hi)))
    return {"d": d, "lo": lo, "hi": hi, "n": values}


def certify_75(T: MorphismType, P: Polarization) -> CertificateReport:
    if not _plane_shape(T, (1, 3), 2):
        raise UnsupportedShape("needs O(-d-2) + 3 O(-d) on P^2")
    rep = _start("7.5", T, P)
    d, n = T.degrees[1], T.n
    B, b = _ab(d)
    l2 = rep.polarization.lambdas[1]
    rep.conditions += [
        cond("lambda_2 > 6/19", l2, ">", Fraction(6, 19)),
        cond("lambda_2 < 1/3", l2, "<", Fraction(1, 3)),
        cond("lambda_2 <= 1/2 - dim S^(d-1) / (2n)", l2, "<=", Fraction(1, 2) - Fraction(b, 2 * n)),
        cond("lambda_2 <= 1 - (dim S^d + dim S^(d-1)) / n", l2, "<=", 1 - Fraction(B + b, n)),
        cond("lambda_2 <= dim S^d / n", l2, "<=", Fraction(B, n)),
    ]
    w = plane_gap2_window(d)
    rep.extras["n_window"] = {
        "lo": format_rational(w["lo"]),
        "hi": format_rational(w["hi"]),
        "n_in_window": w["lo"] < n < w["hi"],
    }
    return rep


# ---------------------------------------------------------------------------
# m O(-d1) + O(-d2) + O(-d3)


def certify_87(T: MorphismType, P: Polarization) -> CertificateReport:
    if T.kind != "31":
        raise UnsupportedShape("needs a type m O(-d1) + O(-d2) + O(-d3)")
    rep = _start("8.7", T, P)
    r, n = T.r, T.n
    m = T.mults[0]
    d1, d2, d3 = T.degrees
    a21, a31, a32 = T.a21, T.a31, T.a32
    bound = binom(d1 - d2 + r - 1, r - 1)
    rep.extras["omega_minus_a21"] = bound
    if m >= bound:
        return _inapplicable(rep, f"m = {m} is not below omega - a21 = {bound}")
    l1, l2, _ = rep.polarization.lambdas
    upper = (1 - m * l1 - a31 * l1 + a32 * a21 * l1) / (1 + a32)
    rep.conditions += [
        cond("lambda_1 > 0", l1, ">", 0),
        cond("lambda_2 > a21 lambda_1", l2, ">", a21 * l1),
        cond("lambda_2 < (1 - m l1 - a31 l1 + a32 a21 l1) / (1 + a32)", l2, "<", upper),
        cond("lambda_2 < 1 - m lambda_1", l2, "<", 1 - m * l1),
        cond("lambda_1 <= 1/(m+a21) - dim S^d3 / ((m+a21) n)", l1, "<=",
             Fraction(1, m + a21) - Fraction(binom(d3 + r, r), (m + a21) * n)),
    ]
    rep.conditions += TildePolarization.from_polarization(T, rep.polarization).gates(T)
    rep.comparisons.append(
        cond("comparison bound: lambda_2 >= a21 dim S^d3 / (n a31)", l2, ">=",
             Fraction(a21 * binom(r + d3, r), n * a31), note="earlier sufficient condition; informational")
    )
    return rep


CLAIMS = {
    "3.3": certify_33,
    "4.2": certify_42_43,
    "4.3": certify_42_43,
    "5.1": certify_51,
    "6.1": certify_61,
    "7.5": certify_75,
    "8.7": certify_87,
}


def certify(claim: str, T: MorphismType, P: Polarization, constants: Mapping | None = None) -> CertificateReport:
    if claim not in CLAIMS:
        raise ValueError(f"unknown claim {claim!r}; choose from {sorted(CLAIMS)}")
    if claim == "3.3":
        return certify_33(T, P, constants or {})
    return CLAIMS[claim](T, P)


def plane_gap2_type(d: int, n: int) -> MorphismType:
    return MorphismType.of(2, (d + 2, d), (1, 3), n)

