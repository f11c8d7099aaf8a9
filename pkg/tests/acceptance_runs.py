"""Acceptance runs; each returns a JSON-able report with a boolean "ok"."""

from __future__ import annotations

import random
import time
from fractions import Fraction

from gitquot.certificates import certify_42_43, linear_three_window, plane_gap2_window
from gitquot.constants import (
    ConstantQuery,
    compute_k,
    eta4,
    kernel_bound_suite,
    koszul_kernel_dimension,
    verify_74_witness,
)
from gitquot.embedding import division_matrix, embed, omega_closed_form, omega_recount, tilde_decide
from gitquot.exact import binom, format_rational
from gitquot.forms import kernel_dimension
from gitquot.king import PROPERLY_SEMISTABLE, STABLE, block_form_status, decide_semistable, is_semistable_status
from gitquot.morphisms import (
    Morphism,
    MorphismType,
    Polarization,
    TildePolarization,
    chambers,
    construct_semistable,
    threshold_l,
)


def _types(mults, rs=(1, 2), dmax=3, nmax=4):
    out = []
    for r in rs:
        for d1 in range(2, dmax + 1):
            for d2 in range(1, d1):
                for n in range(1, nmax + 1):
                    out.append(MorphismType.of(r, (d1, d2), mults, n))
    return out


def _random_lambda1(T, rng):
    m1, m2 = T.mults
    den = 4 * T.n * m1 * m2
    return Fraction(rng.randrange(1, den // m1), den)


def oracle_equivalence(seed=0, per_shape=200, primes=(2, 3)):
    rng = random.Random(seed)
    rows = []
    disagreements = []
    for mults in [(1, 1), (1, 2), (2, 1)]:
        types = _types(mults)
        for p in primes:
            counts = {}
            for t in range(per_shape):
                T = types[t % len(types)]
                phi = Morphism.random(T, p, rng, density=rng.choice([0.15, 0.4, 0.8]))
                P = Polarization.from_lambda1(T, _random_lambda1(T, rng))
                v = decide_semistable(phi, P, p)
                s, _ = block_form_status(phi, P, p)
                counts[v.status] = counts.get(v.status, 0) + 1
                if s != v.status:
                    disagreements.append({"type": T.to_json(), "p": p, "king": v.status, "block_form": s})
            rows.append({"mults": list(mults), "prime": p, "instances": per_shape, "statuses": counts})
    return {"ok": not disagreements, "runs": rows, "disagreements": disagreements}


def _embedding_types():
    out = []
    for r in (1, 2):
        for d1 in range(2, 4):
            for d2 in range(1, d1):
                for mults in [(1, 1), (2, 1), (1, 2)]:
                    for n in range(1, 5):
                        T = MorphismType.of(r, (d1, d2), mults, n)
                        if T.p1 <= 4:
                            out.append(T)
    return out


def _gate_lambdas(T):
    """Chamber midpoints and interior walls with alpha_2 > 0."""
    m1, m2 = T.mults
    a = T.a21
    cap = Fraction(1, a * m2 + m1)  # alpha_2 > 0  <=>  lambda_1 < 1/(a m2 + m1)
    den = 2 * T.n * m1 * m2
    return [Fraction(j, den) for j in range(1, den) if Fraction(j, den) < cap]


def embedding_inclusion(seed=0, count=200, p=2):
    rng = random.Random(seed)
    cases = [(T, l1) for T in _embedding_types() for l1 in _gate_lambdas(T)]
    counter = []
    tally = {}
    for t in range(count):
        T, l1 = cases[rng.randrange(len(cases))]
        phi = Morphism.random(T, p, rng, density=rng.choice([0.3, 0.6, 0.9]))
        P = Polarization.from_lambda1(T, l1)
        tv = tilde_decide(embed(phi), TildePolarization.from_polarization(T, P), p)
        v = decide_semistable(phi, P, p)
        key = f"{tv.status} -> {v.status}"
        tally[key] = tally.get(key, 0) + 1
        bad = (tv.semistable and not v.semistable) or (tv.status == STABLE and v.status != STABLE)
        if bad:
            counter.append({"type": T.to_json(), "lambda1": format_rational(l1), "tilde": tv.status, "phi": v.status})
    return {"ok": not counter, "instances": count, "tally": dict(sorted(tally.items())), "counterexamples": counter}


def constants_k25(p=2):
    base = dict(m2=3, d2=1, e=2, r=2, p=p)
    k25 = compute_k(ConstantQuery(i=2, j=5, **base), budget=None)
    k111 = compute_k(ConstantQuery(i=1, j=11, **base), budget=None)
    return {
        "ok": k25.value == binom(2, 2) and k111.value == 0,
        "k(2,5)": k25.value,
        "k(1,11)": k111.value,
        "visited": {"k(2,5)": k25.visited, "k(1,11)": k111.visited},
        "witness_k25": k25.witness,
    }


def witness_checks():
    reps = {d: verify_74_witness(d) for d in (1, 2, 3, 4)}
    return {
        "ok": all(r.ok and r.lower_bound == binom(d + 1, 2) for d, r in reps.items()),
        "reports": {str(d): r.to_json() for d, r in reps.items()},
    }


def kernel_bounds(seed=0, trials=50):
    rep = kernel_bound_suite(2, trials, seed)
    eta2 = rep.sections["eta2"]
    e3, e4 = rep.sections["eta3"], rep.sections["eta4"]
    koszul = koszul_kernel_dimension(1)
    ok = eta2["max"] <= 5 and e3["max"] <= 4 and e4["max"] <= 4 and koszul == 3 and rep.ok
    # the prescribed eta4 instance: b3 = c1 = 1, the rest 0
    fixed = kernel_dimension(eta4(0, 1, 1, 0, 0), 2)
    return {
        "ok": ok and fixed <= 4,
        "eta2_max": eta2["max"],
        "eta3_max": e3["max"],
        "eta4_max": e4["max"],
        "eta4_fixed": fixed,
        "koszul": koszul,
        "suite": {k: {"max": v["max"], "violations": v["violations"], "count": v["count"]} for k, v in rep.sections.items()},
    }


def omega_checks():
    rows = []
    ok = True
    for r in (1, 2, 3):
        for e in (1, 2, 3):
            for f in (1, 2, 3):
                # d3 = 1, d2 = 1 + f, d1 = d2 + e
                W = division_matrix(r, e + f, f)
                closed, recount = omega_closed_form(r, e), omega_recount(W)
                a21 = binom(r + e, r)
                good = closed == recount and a21 < closed < 2 * a21
                ok &= good
                rows.append({"r": r, "d1-d2": e, "d2-d3": f, "closed": closed, "recount": recount, "a21": a21, "ok": good})
    return {"ok": ok, "cases": rows}


def threshold_checks(nmax=30):
    bad = []
    total = 0
    for n in range(1, nmax + 1):
        T = MorphismType.of(2, (3, 2), (1, 2), n)
        for k in range(n):
            # lambda_1 in (k/n, (k+1)/n): the four thresholds
            P = Polarization.from_lambda1(T, Fraction(2 * k + 1, 2 * n))
            got = [threshold_l(P, (1, 0)), threshold_l(P, (0, 1)), threshold_l(P, (1, 1)), threshold_l(P, (0, 2))]
            want = [k + 1, (n - k + 1) // 2, (n + k) // 2 + 1, n - k]
            total += 1
            if got != want:
                bad.append({"n": n, "kappa": k, "got": got, "want": want})
    return {"ok": not bad, "checked": total, "mismatches": bad}


def certificate_windows():
    w7 = plane_gap2_window(4)
    six = {d: linear_three_window(d) for d in range(1, 9)}
    T = MorphismType.of(2, (4, 3), (1, 2), 13)
    rep = certify_42_43(T, Polarization.from_lambda1(T, Fraction(3, 26)))
    ok = (
        w7["lo"] == Fraction(475, 13)
        and w7["hi"] == Fraction(95, 2)
        and w7["n"] == list(range(37, 48))
        and all(s["window"] == [7, 8, 9] for s in six.values())
        and rep.overall == "certified"
        and rep.claim == "4.3"
    )
    return {
        "ok": ok,
        "plane_gap2": {"lo": format_rational(w7["lo"]), "hi": format_rational(w7["hi"]), "n": w7["n"]},
        "linear_three": {str(d): s for d, s in six.items()},
        "two_block_instance": {"claim": rep.claim, "overall": rep.overall},
    }


def construction_soundness(primes=(2, 3)):
    T = MorphismType.of(2, (3, 2), (1, 1), 3)
    rows = []
    ok = True
    for p in primes:
        gen = construct_semistable(T)
        for c in chambers(T):
            s = decide_semistable(gen, Polarization.from_lambda1(T, c.midpoint), p).status
            ok &= s == STABLE
            rows.append({"p": p, "lambda1": format_rational(c.midpoint), "variant": "generic", "status": s})
        for k in range(1, T.n):
            x = Fraction(k, T.n)
            phi = construct_semistable(T, "properly_semistable", k)
            s = decide_semistable(phi, Polarization.from_lambda1(T, x), p).status
            g = decide_semistable(gen, Polarization.from_lambda1(T, x), p).status
            ok &= s == PROPERLY_SEMISTABLE and is_semistable_status(g)
            rows.append({"p": p, "lambda1": format_rational(x), "variant": f"kappa={k}", "status": s, "generic": g})
    return {"ok": ok, "rows": rows}


def timed(fn, *args, **kw):
    t = time.perf_counter()
    out = fn(*args, **kw)
    return out, time.perf_counter() - t
