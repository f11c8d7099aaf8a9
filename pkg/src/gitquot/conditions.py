"""Exactly evaluated inequalities with margins."""

from __future__ import annotations

import operator
from dataclasses import dataclass
from fractions import Fraction

from .exact import format_rational

_OPS = {"<": operator.lt, "<=": operator.le, ">": operator.gt, ">=": operator.ge, "==": operator.eq}


@dataclass(frozen=True)
class Condition:
    """``lhs relation rhs`` evaluated over the rationals.

    The margin is signed so that a positive value means the inequality
    holds with room to spare; for strict relations a zero margin fails.
    """

    label: str
    lhs: Fraction
    relation: str
    rhs: Fraction
    note: str = ""

    @property
    def holds(self) -> bool:
        return _OPS[self.relation](self.lhs, self.rhs)

    @property
    def strict(self) -> bool:
        return self.relation in ("<", ">")

    @property
    def margin(self) -> Fraction:
        if self.relation in ("<", "<="):
            return Fraction(self.rhs - self.lhs)
        if self.relation in (">", ">="):
            return Fraction(self.lhs - self.rhs)
        return -abs(Fraction(self.lhs - self.rhs))

    def to_json(self):
        out = {
            "label": self.label,
            "inequality": f"{format_rational(self.lhs)} {self.relation} {format_rational(self.rhs)}",
            "lhs": format_rational(self.lhs),
            "rhs": format_rational(self.rhs),
            "relation": self.relation,
            "strict": self.strict,
            "holds": self.holds,
            "margin": format_rational(self.margin),
        }
        if self.note:
            out["note"] = self.note
        return out


def cond(label, lhs, relation, rhs, note="") -> Condition:
    return Condition(label, Fraction(lhs), relation, Fraction(rhs), note)
