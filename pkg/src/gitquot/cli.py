"""Command-line interface.

Every command prints (or writes with --out) one JSON document with sorted
keys.  Rationals are strings "p/q".  Exit codes: 0 success or certified,
1 negative verdict, 2 inapplicable, degenerate or over budget, 3 internal
inconsistency.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from fractions import Fraction

from . import __version__
from .certificates import certify, linear_three_window, plane_gap2_type, plane_gap2_window
from .constants import ConstantQuery, compute_k, kernel_bound_suite, plane_gap2_constants, verify_74_witness
from .embedding import check_reduced, embed, tilde_decide, tilde_search_size
from .errors import AllIrregular, BudgetExceeded, Degenerate, GateFailure, GitQuotError, MissingConstant, UnsupportedShape
from .exact import format_rational, parse_rational
from .king import block_form_status, decide_semistable
from .morphisms import (
    Morphism,
    MorphismType,
    Polarization,
    TildePolarization,
    chambers,
    construct_semistable,
    irregular_values,
    is_degenerate,
    nonempty_conditions,
)
from .subspaces import DEFAULT_BUDGET

EXIT_OK, EXIT_NEGATIVE, EXIT_INAPPLICABLE, EXIT_INCONSISTENT = 0, 1, 2, 3


class Inconsistency(GitQuotError):
    """Two characterizations that must agree did not."""


def _jsonable(x):
    if isinstance(x, Fraction):
        return format_rational(x)
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    return x


def dumps(doc) -> str:
    return json.dumps(_jsonable(doc), sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def _ints(text: str) -> list[int]:
    return [int(x) for x in text.split(",") if x.strip()]


def _load(path: str):
    with open(path, encoding="utf-8") as fh:
        return json.load(fh)


def _load_morphism(path: str, p) -> Morphism:
    """Accepts a bare morphism document or the output of ``construct``."""
    data = _load(path)
    return Morphism.from_json(data.get("result", data), p)


# ---------------------------------------------------------------------------
# argument helpers


def _type_from_args(args, claim: str | None = None) -> MorphismType:
    if getattr(args, "type", None):
        data = _load(args.type)
        return MorphismType.from_json(data.get("type", data))
    if args.degrees and args.mults:
        return MorphismType.of(args.r, _ints(args.degrees), _ints(args.mults), args.n)
    if args.d1 is not None and args.d2 is not None and args.m is None:
        degs = [args.d1, args.d2] + ([args.d3] if args.d3 is not None else [])
        mults = [1] * len(degs)
        return MorphismType.of(args.r, degs, mults, args.n)
    d, m = args.d, args.m
    if claim == "7.5" or claim == "3.3":
        return plane_gap2_type(d, args.n)
    if claim == "5.1":
        return MorphismType.of(2, (d + 1, d), (1, 3), args.n)
    if claim == "6.1":
        return MorphismType.of(2, (d + 1, 1), (m, 3), args.n)
    if claim in ("4.2", "4.3"):
        return MorphismType.of(args.r, (args.d1, args.d2), (m or 1, 2), args.n)
    if claim == "8.7":
        return MorphismType.of(args.r, (args.d1, args.d2, args.d3), (m or 1, 1, 1), args.n)
    raise SystemExit("give the type with --type, --degrees/--mults or the claim's shape flags")


def _polarization_from_args(args, T: MorphismType) -> Polarization:
    if getattr(args, "polarization", None):
        data = _load(args.polarization)
        return Polarization.from_json(data.get("polarization", data), T)
    if args.lambdas:
        return Polarization.from_lambdas(T, *(parse_rational(x) for x in args.lambdas.split(",")))
    if args.lambda1 is not None:
        l1 = parse_rational(args.lambda1)
        if T.nblocks == 2:
            return Polarization.from_lambda1(T, l1)
        raise SystemExit("three-block types need --lambdas l1,l2")
    if args.lambda2 is not None and T.nblocks == 2:
        l2 = parse_rational(args.lambda2)
        m1, m2 = T.mults
        return Polarization.from_lambda1(T, (1 - m2 * l2) / m1)
    raise SystemExit("give the polarization with --polarization, --lambdas, --lambda1 or --lambda2")


def _add_type_flags(p):
    p.add_argument("--type", help="JSON file with a morphism type (or a document with a 'type' key)")
    p.add_argument("--r", type=int, default=2)
    p.add_argument("--degrees", help="comma separated source degrees, decreasing")
    p.add_argument("--mults", help="comma separated multiplicities")
    p.add_argument("--n", type=int)
    p.add_argument("--d", type=int)
    p.add_argument("--d1", type=int)
    p.add_argument("--d2", type=int)
    p.add_argument("--d3", type=int)
    p.add_argument("--m", type=int)


def _add_polarization_flags(p):
    p.add_argument("--polarization", help="JSON file with lambdas and mu")
    p.add_argument("--lambdas", help="all but the last lambda, comma separated rationals")
    p.add_argument("--lambda1")
    p.add_argument("--lambda2")


# ---------------------------------------------------------------------------
# commands; each returns (result document, exit code)


def cmd_chambers(args):
    T = _type_from_args(args)
    degenerate, reason = is_degenerate(T)
    if degenerate:
        raise Degenerate(reason)
    vals = irregular_values(T)
    if T.kind == "31":
        return {"type": T.to_json(), "lines": [L.to_json() for L in vals]}, EXIT_OK
    out = []
    for c in chambers(T):
        entry = c.to_json()
        try:
            entry["nonempty"] = nonempty_conditions(T, c).to_json()
        except UnsupportedShape:
            pass
        out.append(entry)
    return {"type": T.to_json(), "irregular_values": [format_rational(x) for x in vals], "chambers": out}, EXIT_OK


def cmd_check(args):
    phi = _load_morphism(args.morphism, args.prime)
    T = phi.type
    P = _polarization_from_args(args, T)
    verdict = decide_semistable(phi, P, args.prime, budget=args.budget, jobs=args.jobs)
    status, witness = block_form_status(phi, P, args.prime, budget=args.budget)
    if status != verdict.status:
        raise Inconsistency(f"King search says {verdict.status}, block forms say {status}")
    doc = verdict.to_json()
    doc["block_form"] = {"status": status, "witness": witness.to_json() if witness else None}
    doc["polarization"] = P.to_json()
    return doc, EXIT_OK if verdict.semistable else EXIT_NEGATIVE


def cmd_embed(args):
    phi = _load_morphism(args.morphism, args.prime)
    T = phi.type
    P = _polarization_from_args(args, T)
    TP = TildePolarization.from_polarization(T, P)
    E = embed(phi)
    red = check_reduced(E, TP, args.prime, budget=args.budget)
    doc = {"embedded": E.to_json(), "tilde_polarization": TP.to_json(), "reduced": red.to_json()}
    if E.p1 <= 6:
        full = tilde_decide(E, TP, args.prime, budget=args.budget)
        doc["full"] = full.to_json()
        doc["agree"] = full.status == red.status
    else:
        doc["full"] = None
        doc["full_search_size"] = tilde_search_size(E, args.prime)
    if red.semistable:
        doc["implication"] = (
            "the embedded point is tilde-semistable over F_p, so phi is semistable over F_p "
            "for this polarization"
        )
    return doc, EXIT_OK if red.semistable else EXIT_NEGATIVE


def cmd_constants(args):
    if args.shape == "s7":
        table = plane_gap2_constants(args.d, args.prime, budget=args.budget,
                                   exhaustive=True if args.exhaustive else None)
        doc = {"shape": "O(-d-2)+3O(-d)", "d": args.d, "constants": {k: v.to_json() for k, v in table.items()}}
        if args.d >= 1:
            doc["witness_k25"] = verify_74_witness(args.d).to_json()
        return doc, EXIT_OK
    if args.shape == "kernels":
        return kernel_bound_suite(args.d, args.trials, args.seed).to_json(), EXIT_OK
    q = ConstantQuery(args.m2, args.d2, args.e, args.r, args.i, args.j, args.prime)
    res = compute_k(q, budget=args.budget)
    return dict(res.to_json(), d=args.d2), EXIT_OK


def cmd_certify(args):
    doc_in = _load(args.input) if args.input else {}
    claim = args.claim or doc_in.get("claim")
    if claim is None:
        raise SystemExit("give --claim")
    if doc_in:
        T = MorphismType.from_json(doc_in["type"])
        P = Polarization.from_json(doc_in["polarization"], T)
        constants = doc_in.get("constants")
    else:
        T = _type_from_args(args, claim)
        P = _polarization_from_args(args, T)
        constants = None
    if claim == "3.3" and constants is None:
        if T.r == 2 and T.mults == (1, 3) and T.degrees[0] - T.degrees[1] == 2:
            constants = plane_gap2_constants(T.degrees[1], budget=args.budget)
        else:
            raise MissingConstant("claim 3.3 needs a constants table for this type")
    rep = certify(claim, T, P, constants)
    doc = rep.to_json()
    if claim == "7.5":
        w = plane_gap2_window(T.degrees[1])
        doc["n_window"] = {"lo": w["lo"], "hi": w["hi"], "n": w["n"]}
    if claim == "6.1":
        doc["window_m_half_a"] = linear_three_window(T.degrees[0] - 1)
    code = {"certified": EXIT_OK, "conditionally-certified": EXIT_OK, "not-certified": EXIT_NEGATIVE}
    return doc, code.get(rep.overall, EXIT_INAPPLICABLE)


def cmd_construct(args):
    T = _type_from_args(args)
    phi = construct_semistable(T, args.variant, args.kappa, args.prime)
    return phi.to_json(), EXIT_OK


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="gitquot", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--prime", type=int, default=2)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    common.add_argument("--jobs", type=int, default=1)
    common.add_argument("--out", help="write the JSON report here instead of stdout")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("chambers", parents=[common], help="irregular values and chambers of a type")
    _add_type_flags(p)
    p.set_defaults(func=cmd_chambers)

    p = sub.add_parser("check", parents=[common], help="decide semistability of a morphism over F_p")
    p.add_argument("morphism")
    _add_polarization_flags(p)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("embed", parents=[common], help="tilde stability of the embedded point")
    p.add_argument("morphism")
    _add_polarization_flags(p)
    p.set_defaults(func=cmd_embed)

    p = sub.add_parser("constants", parents=[common], help="linear algebra constants and kernel checks")
    p.add_argument("--shape", choices=["s7", "single", "kernels"], default="s7")
    p.add_argument("--d", type=int, default=1)
    p.add_argument("--exhaustive", action="store_true", help="force exhaustive search for d > 1")
    p.add_argument("--trials", type=int, default=50)
    p.add_argument("--m2", type=int, default=3)
    p.add_argument("--d2", type=int, default=1)
    p.add_argument("--e", type=int, default=2)
    p.add_argument("--r", type=int, default=2)
    p.add_argument("--i", type=int, default=1)
    p.add_argument("--j", type=int)
    p.set_defaults(func=cmd_constants)

    p = sub.add_parser("certify", parents=[common], help="evaluate a quotient-existence criterion")
    p.add_argument("--claim", choices=["3.3", "4.2", "4.3", "5.1", "6.1", "7.5", "8.7"])
    p.add_argument("--input", help="JSON file {type, polarization, claim, constants?}")
    _add_type_flags(p)
    _add_polarization_flags(p)
    p.set_defaults(func=cmd_certify)

    p = sub.add_parser("construct", parents=[common], help="explicit morphism of type O(-d1) + O(-d2) -> nO")
    _add_type_flags(p)
    p.add_argument("--variant", choices=["generic", "properly_semistable"], default="generic")
    p.add_argument("--kappa", type=int)
    p.set_defaults(func=cmd_construct)
    return parser


def _echo(args) -> dict:
    skip = {"func", "out", "prime", "seed", "budget", "jobs"}
    return {k: v for k, v in sorted(vars(args).items()) if k not in skip and v is not None}


def run(argv=None) -> tuple[str, int]:
    """Parse ``argv``, run the command and return (json text, exit code)."""
    args = build_parser().parse_args(argv)
    if args.budget <= 0:
        raise SystemExit("--budget must be positive")
    random.seed(args.seed)
    envelope = {
        "command": args.command,
        "input": _echo(args),
        "prime": args.prime,
        "seed": args.seed,
        "budget": args.budget,
        "version": __version__,
    }
    try:
        result, code = args.func(args)
        envelope["result"] = result
    except Inconsistency as exc:
        envelope["error"] = {"kind": "inconsistency", "message": str(exc)}
        code = EXIT_INCONSISTENT
    except (Degenerate, AllIrregular, UnsupportedShape, GateFailure, MissingConstant, BudgetExceeded) as exc:
        envelope["error"] = {"kind": type(exc).__name__, "message": str(exc)}
        code = EXIT_INAPPLICABLE
    return dumps(envelope), code


def main(argv=None) -> int:
    text, code = run(argv)
    out = build_parser().parse_args(argv).out
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
