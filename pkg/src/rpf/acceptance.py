"""Acceptance checks shared by ``rpf selftest`` and the test suite.

Each ``criterion_N`` returns a list of :class:`Check`.  A check flagged
``literal_conflict`` restates a target that contradicts the published
series itself; it is reported but does not count towards the verdict.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from fractions import Fraction

from . import calibration, elliptic, modular, recognize, regression, series
from .elliptic import elliptic_E, elliptic_K, generalized_alpha, hyper_pFq
from .precision import format_scientific, make_context, pi_const, sqrt_rational


@dataclass(frozen=True)
class Check:
    criterion: int
    name: str
    passed: bool
    detail: str
    literal_conflict: bool = False

    def line(self) -> str:
        tag = "PASS" if self.passed else "FAIL"
        note = " (literal reading; conflicts with the printed series)" if self.literal_conflict else ""
        return f"[{tag}] criterion {self.criterion}: {self.name}: {self.detail}{note}"


def _lt(x, bound):
    return bool(x < bound)


def _sci(x):
    return format_scientific(x, 3)


# -- 1 ---------------------------------------------------------------------


def _recognized_rational(x, ctx, max_degree=4):
    cand = recognize.recognize_algebraic(x, max_degree, ctx)
    if cand is None or cand.degree != 1:
        return None
    return Fraction(-cand.coeffs[0], cand.coeffs[1])


def criterion_1(quick: bool = False) -> list:
    out = []
    ctx = make_context(200)
    for r, J_exp, T_lit in ((2, Fraction(27, 125), Fraction(5, 14)), (4, Fraction(8, 1331), Fraction(10, 21))):
        J, T = modular.J_T_pair(r, ctx)
        Jr = _recognized_rational(J, ctx)
        Tr = _recognized_rational(T, ctx)
        out.append(Check(1, f"J_{r} = {J_exp}", Jr == J_exp, f"recognized {Jr}"))
        if r == 2:
            out.append(Check(1, f"T_2 = {T_lit}", Tr == T_lit, f"recognized {Tr}"))
        else:
            # the series constant 10/21 is 1 - T_4
            out.append(Check(1, "1 - T_4 = 10/21", Tr is not None and 1 - Tr == T_lit,
                             f"recognized T_4 = {Tr}"))
            out.append(Check(1, "T_4 = 10/21", Tr == T_lit, f"recognized T_4 = {Tr}",
                             literal_conflict=True))
    for label in ("J_5", "T_5", "J_18", "T_18", "1-T_18", "J_58", "T_58", "1-T_58"):
        entry = regression.printed_value(label)
        _, _, diff = regression.compare_printed(entry, ctx)
        out.append(Check(1, f"{label} matches printed closed form", _lt(diff, 1e-190), f"|diff| = {_sci(diff)}"))
    if not quick:
        big = make_context(1500)
        cand = recognize.recognize_algebraic(modular.beta_r(58, big), 6, big)
        want = regression.printed_polynomial("beta_58").coeffs
        got = None if cand is None else cand.coeffs
        out.append(Check(1, "beta_58 quartic at 1500 digits", got == want,
                         "coefficient-for-coefficient" if got == want else f"got {got}"))
    return out


# -- 2 ---------------------------------------------------------------------


def criterion_2(quick: bool = False) -> list:
    ctx = make_context(50)
    out = []
    for name in regression.FIXTURE_NAMES[:7]:
        spec = regression.printed_formula(name, ctx)
        value, n = series.evaluate_series(spec, 50, ctx)
        err = abs(value - spec.rhs)
        out.append(Check(2, f"{name} (r={spec.r})", _lt(err, 1e-45), f"|S - rhs| = {_sci(err)} in {n} terms"))
    return out


# -- 3 ---------------------------------------------------------------------


RATE_CLAIMS = ((18, 8, 100), (27, 11, 140), (58, 18, 220), (93, 24, 300), (163, 32, 400))


def _rate_check(r, claim, spec, digits, ctx):
    rep = series.verify_formula(spec, digits, ctx)
    rate = rep.measured_digits_per_term
    ok = rep.passed and rate is not None and abs(rate - claim) <= 1
    return Check(3, f"r={r} digits per term ~ {claim}", ok,
                 f"measured {rate:.3f}, verification {'passed' if rep.passed else 'failed'}")


def criterion_3(quick: bool = False) -> list:
    out = []
    for r, claim, digits in RATE_CLAIMS:
        ctx = make_context(digits + 10)
        out.append(_rate_check(r, claim, series.derive_formula("jseries", r, ctx), digits, ctx))
    # r = 253 through recognized algebraic J and T
    ctx = make_context(600)
    J, T = modular.J_T_pair(253, ctx)
    pj = recognize.recognize_algebraic(J, 16, ctx)
    pt = recognize.recognize_algebraic(T, 16, ctx)
    if pj is None or pt is None:
        out.append(Check(3, "r=253 recognition of J and T", False, "not found at 600 digits"))
        return out
    Jalg = recognize.select_root(pj.coeffs, J, ctx)
    Talg = recognize.select_root(pt.coeffs, T, ctx)
    printed = regression.evaluate_printed(regression.printed_value("J_253"), ctx)
    diff = abs(Jalg - printed)
    out.append(Check(3, "recognized J_253 matches printed surd", _lt(diff, 1e-190),
                     f"degree {pj.degree}, |diff| = {_sci(diff)}"))
    mp = ctx.mp
    spec = series.make_spec("jseries", 253, Jalg, (1 - Talg, 6),
                            3 / (sqrt_rational(Fraction(253), ctx) * mp.sqrt(1 - Jalg)), 1,
                            "3/(pi*sqrt(253)*sqrt(1-J_253))", ctx, upper=series.SEXTIC_UPPER)
    out.append(_rate_check(253, 41, spec, 500, ctx))
    return out


# -- 4 ---------------------------------------------------------------------


def criterion_4(quick: bool = False) -> list:
    out = []
    ctx = make_context(50)
    spec = regression.printed_formula("thm23_r25", ctx)
    value, n = series.evaluate_series(spec, 50, ctx)
    err = abs(value - spec.rhs)
    out.append(Check(4, "r=25 printed 1/pi^2 series", _lt(err, 1e-45), f"|S - rhs| = {_sci(err)} in {n} terms"))

    ctx = make_context(300)
    k, kp = elliptic.modulus_pair(163, ctx)
    cand = recognize.recognize_algebraic((k * kp) ** 2, 4, ctx)
    want = regression.printed_polynomial("y_163").coeffs
    got = None if cand is None else cand.coeffs
    out.append(Check(4, "y_163 cubic by recognition", got == want, f"got {cand.pretty() if cand else None}"))

    ctx = make_context(100)
    for label in ("b(163)-1", "c(163)", "A (r=163)"):
        _, _, diff = regression.compare_printed(regression.printed_value(label), ctx)
        out.append(Check(4, f"derived {label} vs printed", _lt(diff, 1e-40), f"|diff| = {_sci(diff)}"))
    spec = series.derive_formula("thm23", 163, ctx)
    for label, key in (("b(163)", "b"), ("c(163)", "c")):
        coeffs = regression.printed_polynomial(label).coeffs
        res = abs(recognize.poly_eval(coeffs, spec.parameters[key], ctx))
        out.append(Check(4, f"printed {label} cubic at derived value", _lt(res, 1e-40), f"|p| = {_sci(res)}"))
    return out


# -- 5 ---------------------------------------------------------------------


def criterion_5(quick: bool = False) -> list:
    if quick:
        return []
    from .cli import derive_report

    report = derive_report("jseries", "163", 1500, recognize_params=True, max_degree=16)
    out = []
    recog = report["recognized"]
    want_J = [str(c) for c in regression.printed_polynomial("J_163").coeffs]
    got_J = recog.get("J", {}).get("coeffs")
    out.append(Check(5, "J_163 cubic from derive --recognize", got_J == want_J,
                     recog.get("J", {}).get("polynomial", "not found")))
    ctx = make_context(1500)
    T_entry = recog.get("T")
    if T_entry is None or T_entry.get("coeffs") is None:
        out.append(Check(5, "T_163 recognized", False, "not found"))
        return out
    T_root = ctx.mp.mpf(T_entry["value"]["value"])
    printed = regression.evaluate_printed(regression.printed_value("T_163"), ctx)
    diff = abs(T_root - printed)
    out.append(Check(5, "T_163 root vs printed radical", _lt(diff, ctx.mp.mpf(10) ** -1400),
                     f"degree {T_entry['degree']}, |diff| = {_sci(diff)}"))
    return out


# -- 6 ---------------------------------------------------------------------


def criterion_6(quick: bool = False) -> list:
    ctx = make_context(100)
    mp = ctx.mp
    pi = pi_const(ctx)
    out = []
    worst = mp.mpf(0)
    for i in range(1, 10):
        k = mp.mpf(i) / 10
        kp = mp.sqrt(1 - k * k)
        lhs = elliptic_E(k, ctx) * elliptic_K(kp, ctx) + elliptic_E(kp, ctx) * elliptic_K(k, ctx) \
            - elliptic_K(k, ctx) * elliptic_K(kp, ctx)
        worst = max(worst, abs(lhs - pi / 2))
    out.append(Check(6, "Legendre relation at k = 0.1..0.9", _lt(worst, mp.mpf(10) ** -95), f"max {_sci(worst)}"))

    worst = mp.mpf(0)
    for r in (1, 2, 3, 5, 7):
        jm = modular.j_invariant(r, "modulus", ctx)
        for route in ("eta", "eisenstein"):
            worst = max(worst, abs(modular.j_invariant(r, route, ctx) - jm) / abs(jm))
    out.append(Check(6, "three-route j at r = 1,2,3,5,7", _lt(worst, mp.mpf(10) ** -92), f"max rel {_sci(worst)}"))

    worst = mp.mpf(0)
    for r in (2, 3, 4):
        b1 = modular.invert_hyper_ratio(Fraction(1, 6), Fraction(5, 6), r, ctx)
        worst = max(worst, abs(b1 - modular.beta_r(r, ctx)))
    out.append(Check(6, "beta by 2F1 ratio vs j route at r = 2,3,4", _lt(worst, mp.mpf(10) ** -95),
                     f"max {_sci(worst)}"))

    worst = mp.mpf(0)
    for r in (2, 5, 18):
        worst = max(worst, abs(modular.T_alternate(r, ctx) - modular.J_T_pair(r, ctx)[1]))
    out.append(Check(6, "T_r two expressions at r = 2,5,18", _lt(worst, mp.mpf(10) ** -95), f"max {_sci(worst)}"))

    for label, a, b in (("sextic", Fraction(1, 6), Fraction(5, 6)), ("cubic", Fraction(1, 3), Fraction(2, 3))):
        worst = mp.mpf(0)
        for z in (mp.mpf("0.1"), mp.mpf("0.5")):
            w = (1 - mp.sqrt(1 - z)) / 2
            lhs = hyper_pFq([a, b], [1], w, ctx) ** 2
            rhs = hyper_pFq([a, b, Fraction(1, 2)], [1, 1], z, ctx)
            worst = max(worst, abs(lhs - rhs))
        out.append(Check(6, f"{label} Clausen-type identity at z = 0.1, 0.5", _lt(worst, mp.mpf(10) ** -95),
                         f"max {_sci(worst)}"))

    worst = mp.mpf(0)
    for r in (2, 5):
        beta = modular.beta_r(r, ctx)
        k, _ = elliptic.modulus_pair(r, ctx)
        m = k * k
        sr = sqrt_rational(Fraction(r), ctx)
        lhs = 10 * generalized_alpha(Fraction(1, 3), mp.sqrt(beta), r, ctx) / sr
        rhs = 1 + 8 * beta - (1 + m - 3 * elliptic.alpha(r, ctx) / sr) / mp.sqrt(1 - m + m * m)
        worst = max(worst, abs(lhs - rhs))
    out.append(Check(6, "fifth-base alpha identity at r = 2,5", _lt(worst, mp.mpf(10) ** -90), f"max {_sci(worst)}"))

    bad = []
    count = 0
    for d in range(3, 101):
        if not modular.is_fundamental(d):
            continue
        count += 1
        if modular.class_number(d) != reduced_form_count(d):
            bad.append(d)
    out.append(Check(6, "class numbers vs reduced-form count, fundamental d <= 100", not bad,
                     f"{count} discriminants, mismatches {bad}"))

    ctx200 = make_context(200)
    cand = recognize.recognize_algebraic(pi_const(ctx200), 8, ctx200)
    out.append(Check(6, "pi not recognized at degree <= 8, 200 digits", cand is None,
                     "not found" if cand is None else cand.pretty()))
    return out


def reduced_form_count(d: int) -> int:
    """Number of reduced primitive forms ``ax^2 + bxy + cy^2`` of discriminant -d."""
    from math import gcd

    h = 0
    a = 1
    while 3 * a * a <= d:
        for b in range(-a + 1, a + 1):
            if (b * b + d) % (4 * a):
                continue
            c = (b * b + d) // (4 * a)
            if c < a or (b < 0 and a == c):
                continue
            if gcd(gcd(a, abs(b)), c) == 1:
                h += 1
        a += 1
    return h


# -- 7 ---------------------------------------------------------------------


def criterion_7(quick: bool = False) -> list:
    t0 = time.perf_counter()
    ctx = make_context(330)
    J, T = modular.J_T_pair(163, ctx)
    pj = recognize.recognize_algebraic(J, 16, ctx)
    pt = recognize.recognize_algebraic(T, 16, ctx)
    if pj is None or pt is None:
        return [Check(7, "pi from r=163", False, "J_163 or T_163 not recognized at 330 digits")]
    Jalg = recognize.select_root(pj.coeffs, J, ctx)
    Talg = recognize.select_root(pt.coeffs, T, ctx)
    mp = ctx.mp
    spec = series.make_spec("jseries", 163, Jalg, (1 - Talg, 6),
                            3 / (mp.sqrt(163) * mp.sqrt(1 - Jalg)), 1,
                            "3/(pi*sqrt(163)*sqrt(1-J_163))", ctx, upper=series.SEXTIC_UPPER)
    est, n = series.pi_from_formula(spec, 300, ctx)
    err = abs(est - pi_const(ctx))
    correct = int(-mp.log10(err)) if err else ctx.dps
    elapsed = time.perf_counter() - t0
    ok = correct >= 300 and n <= 11 and elapsed < 60
    return [Check(7, "pi from algebraic r=163 parameters", ok,
                  f"{correct} correct digits in {n} terms, {elapsed:.2f} s")]


# -- 8 ---------------------------------------------------------------------


def criterion_8(quick: bool = False) -> list:
    ctx = make_context(60)
    out = []
    results = (
        calibration.calibrate_alpha_power(ctx),
        calibration.calibrate_base3_exponent(ctx),
        calibration.calibrate_b_convention(ctx),
    )
    for res in results:
        out.append(Check(8, res.name, res.resolved,
                         f"passing {[str(p) for p in res.passing]}, configured {res.chosen}"))
    meta = series.derive_formula("base3", 2, ctx).metadata
    ok = (meta["alpha_s_power"] == elliptic.ALPHA_S_POWER == 2
          and meta["base3_root_exponent"] == "1/2"
          and meta["b_index_convention"] == "j")
    out.append(Check(8, "chosen readings in report metadata", ok, str(meta)))
    return out


CRITERIA = {
    1: criterion_1,
    2: criterion_2,
    3: criterion_3,
    4: criterion_4,
    5: criterion_5,
    6: criterion_6,
    7: criterion_7,
    8: criterion_8,
}


def run(quick: bool = False, emit=None) -> list:
    checks = []
    for _, fn in sorted(CRITERIA.items()):
        for check in fn(quick):
            checks.append(check)
            if emit is not None:
                emit(check.line())
    return checks


def verdict(checks) -> bool:
    return all(c.passed for c in checks if not c.literal_conflict)
