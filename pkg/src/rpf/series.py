"""Coefficient schemes, the six series families and their verification.

A :class:`FormulaSpec` describes ``sum_{n>=0} coeff_n z^n (c0 + c1 n + c2 n^2)``
whose value should equal ``rhs_factor / pi**pi_power``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import comb

from . import kernels
from .elliptic import _alpha, _modulus_pair, generalized_alpha
from .errors import ConvergenceError, DomainError, PrecisionError
from .modular import _beta, _j_modulus, _sqrt_one_minus_J, alpha3
from .precision import (
    PrecisionContext,
    from_fixed,
    parse_rational,
    pi_const,
    sqrt_rational,
    to_fixed,
    to_mpf,
)

FAMILIES = ("thm21", "thm22", "thm23", "jseries", "base5", "base3")

# Reading of the inner Pochhammer index in the B-coefficients: "j" uses
# (1/2)_j (validated against the square of 2F1(1/2,1/2;1;z)), "n" is the
# literal (1/2)_n.
B_INDEX_CONVENTION = "j"

# Exponent applied to alpha_3 inside a_{1/6}[...] in the cubic-base constant.
BASE3_ROOT_EXPONENT = Fraction(1, 2)

HALF = Fraction(1, 2)
SEXTIC_UPPER = (Fraction(1, 6), Fraction(5, 6), HALF)
CUBIC_UPPER = (Fraction(1, 3), Fraction(2, 3), HALF)
HALF_UPPER = (HALF, HALF, HALF)
UNIT_LOWER = (Fraction(1), Fraction(1))


# -- coefficients ----------------------------------------------------------


def pochhammer(a: Fraction, n: int) -> Fraction:
    p = Fraction(1)
    for i in range(n):
        p *= a + i
    return p


def coeff_pochhammer_half_cubed(n: int, ctx: PrecisionContext | None = None):
    """``((1/2)_n / n!)^3``, exact when *ctx* is None, otherwise an mpf."""
    if n < 0:
        raise DomainError("n must be non-negative")
    c = Fraction(1)
    for m in range(1, n + 1):
        c *= Fraction(2 * m - 1, 2 * m) ** 3
    if ctx is None:
        return c
    return ctx.mp.mpf(c.numerator) / c.denominator


@lru_cache(maxsize=None)
def coeff_B(order: int, n: int, convention: str = "j") -> Fraction:
    """``B^{(order)}_n = sum_j [C(n,j) (1/2)_j (1/2)_{n-j}]^order`` as an exact rational.

    ``convention="n"`` uses ``(1/2)_n`` in place of ``(1/2)_j``.
    """
    if order not in (2, 3):
        raise DomainError("B coefficients are defined for order 2 and 3")
    if n < 0:
        raise DomainError("n must be non-negative")
    if convention == "j":
        # C(n,j)(1/2)_j(1/2)_{n-j} = n! C(2j,j) C(2n-2j,n-j) / 4^n
        s = sum((comb(2 * j, j) * comb(2 * (n - j), n - j)) ** order for j in range(n + 1))
        return Fraction(math.factorial(n) ** order * s, 4 ** (n * order))
    if convention == "n":
        pn = pochhammer(HALF, n)
        return sum((comb(n, j) * pn * pochhammer(HALF, n - j)) ** order for j in range(n + 1))
    raise DomainError(f"unknown B convention {convention!r}")


@lru_cache(maxsize=None)
def _B_weight(order: int, n: int, convention: str) -> Fraction:
    return coeff_B(order, n, convention) / Fraction(math.factorial(n) ** order)


# -- formula specs ---------------------------------------------------------


@dataclass(frozen=True)
class FormulaSpec:
    """A fully instantiated series with its right-hand side.

    ``scheme`` is ``"hyper"`` (coefficients from ``upper``/``lower``
    Pochhammer parameters over ``n!``) or ``"B2"``/``"B3"``.
    """

    family: str
    r: Fraction | None
    z: object
    multiplier: tuple  # (c0, c1, c2): c0 + c1 n + c2 n^2
    rhs_factor: object
    pi_power: int
    rhs: object
    rhs_description: str
    digits_per_term: float
    scheme: str = "hyper"
    upper: tuple = ()
    lower: tuple = UNIT_LOWER
    parameters: dict = field(default_factory=dict)
    metadata: dict = field(default_factory=dict)
    digits: int = 0

    def __post_init__(self):
        if not abs(self.z) < 1:
            raise DomainError("series argument must satisfy |z| < 1")

    @property
    def lin_a(self):
        """Leading coefficient: n for linear families, n^2 for thm23."""
        return self.multiplier[2] if self.scheme == "B3" else self.multiplier[1]

    @property
    def lin_b(self):
        return self.multiplier[0]

    @property
    def mid_b(self):
        return self.multiplier[1] if self.scheme == "B3" else 0


def make_spec(family, r, z, multiplier, rhs_factor, pi_power, description, ctx, **extra):
    """Assemble a FormulaSpec, filling rhs and digits-per-term from the inputs."""
    mp = ctx.mp
    z = to_mpf(z, ctx)
    if not abs(z) < 1:
        raise DomainError(f"{family}: series argument |z| = {mp.nstr(abs(z), 8)} >= 1")
    mult = tuple(to_mpf(c, ctx) for c in multiplier) + (mp.mpf(0),) * (3 - len(multiplier))
    rhs_factor = to_mpf(rhs_factor, ctx)
    rhs = rhs_factor / pi_const(ctx) ** pi_power
    dpt = float(-mp.log10(abs(z))) if z else math.inf
    return FormulaSpec(
        family=family,
        r=None if r is None else parse_rational(r),
        z=z,
        multiplier=mult,
        rhs_factor=rhs_factor,
        pi_power=pi_power,
        rhs=rhs,
        rhs_description=description,
        digits_per_term=dpt,
        digits=ctx.digits,
        **extra,
    )


def calibration_metadata():
    from . import elliptic

    return {
        "alpha_s_power": elliptic.ALPHA_S_POWER,
        "base3_root_exponent": str(BASE3_ROOT_EXPONENT),
        "b_index_convention": B_INDEX_CONVENTION,
    }


def _need(r, family, minimum, strict):
    r = parse_rational(r)
    if r <= 0:
        raise DomainError(f"{family}: r must be positive")
    if minimum is not None and (r < minimum or (strict and r == minimum)):
        op = ">" if strict else ">="
        raise DomainError(f"{family}: requires r {op} {minimum} (got r={r})")
    return r


def derive_formula(family: str, r, ctx: PrecisionContext, *, alpha_power=None,
                   base3_exponent=None) -> FormulaSpec:
    """Instantiate one of the six series families at the rational *r*."""
    mp = ctx.mp
    meta = calibration_metadata()
    if family not in FAMILIES:
        raise DomainError(f"unknown family {family!r}; choose from {', '.join(FAMILIES)}")

    if family in ("thm21", "thm22", "thm23"):
        r = _need(r, family, None, False)
        k, kp = _modulus_pair(r, ctx)
        a = _alpha(r, ctx)[0]
        sr = sqrt_rational(r, ctx)
        m = k * k
        mp_ = kp * kp
        params = {"k2": m, "alpha": a}
        if family == "thm21":
            if r == 1:
                raise DomainError("thm21: z = 4 k^2 k'^2 = 1 at r = 1")
            return make_spec(
                family, r, 4 * m * mp_, (a - sr * m, sr * (1 - 2 * m)), 1, 1, "1/pi", ctx,
                upper=HALF_UPPER, lower=UNIT_LOWER, parameters=params, metadata=meta,
            )
        if family == "thm22":
            return make_spec(
                family, r, m, (a - sr * m, sr * mp_), 1, 1, "1/pi", ctx,
                scheme="B2", parameters=params, metadata=meta,
            )
        if r == 1:
            raise DomainError("thm23: 1 - 2 k_r^2 = 0 at r = 1")
        d2 = (1 - 2 * m) ** 2
        b = (3 * a + sr - 6 * a * m - 9 * sr * m + 12 * sr * m * m) / (sr * d2)
        c = (3 * a * a - 6 * a * sr * m - r_mpf(r, ctx) * m + 4 * r_mpf(r, ctx) * m * m) / (
            r_mpf(r, ctx) * d2
        )
        params.update({"b": b, "c": c, "y": m * mp_})
        return make_spec(
            family, r, 4 * m * mp_, (c, b - 1, 1), 3 / (d2 * r_mpf(r, ctx)), 2,
            "3/((1-2*k_r^2)^2 * r * pi^2)", ctx,
            scheme="B3", parameters=params, metadata=meta,
        )

    r = _need(r, family, 1, True)
    sr = sqrt_rational(r, ctx)
    if family == "jseries":
        J = 1728 / _j_modulus(r, ctx)
        root = _sqrt_one_minus_J(r, ctx)
        k, _ = _modulus_pair(r, ctx)
        m = k * k
        a = _alpha(r, ctx)[0]
        T = (1 + m - 3 * a / sr) / (mp.sqrt(1 - m + m * m) * root)
        return make_spec(
            family, r, J, (1 - T, 6), 3 / (sr * root), 1,
            "3/(pi*sqrt(r)*sqrt(1-J_r))", ctx,
            upper=SEXTIC_UPPER, parameters={"J": J, "T": T}, metadata=meta,
        )
    if family == "base5":
        beta = _beta(r, ctx)
        a5 = generalized_alpha(Fraction(1, 3), mp.sqrt(beta), r, ctx, power=alpha_power)
        if alpha_power is not None:
            meta["alpha_s_power"] = alpha_power
        root = _sqrt_one_minus_J(r, ctx)  # 1 - 2 beta
        const = -5 * (beta - a5 / sr) / root
        return make_spec(
            family, r, 4 * beta * (1 - beta), (const, 3), 3 / (2 * sr * root), 1,
            "3/(2*pi*sqrt(r)*(1-2*beta_r))", ctx,
            upper=SEXTIC_UPPER, parameters={"beta": beta, "alpha5": a5}, metadata=meta,
        )
    # base3
    expo = BASE3_ROOT_EXPONENT if base3_exponent is None else parse_rational(base3_exponent)
    meta["base3_root_exponent"] = str(expo)
    if alpha_power is not None:
        meta["alpha_s_power"] = alpha_power
    al = alpha3(r, ctx)
    x = al ** (mp.mpf(expo.numerator) / expo.denominator)
    a6 = generalized_alpha(Fraction(1, 6), x, r, ctx, power=alpha_power)
    b = 4 * (al - a6 / sr) / (3 * (1 - 2 * al))
    return make_spec(
        family, r, 4 * al * (1 - al), (-b, 1), mp.sqrt(3) / (2 * sr * (1 - 2 * al)), 1,
        "sqrt(3)/(2*pi*sqrt(r)*(1-2*alpha3_r))", ctx,
        upper=CUBIC_UPPER, parameters={"alpha3": al, "b": b}, metadata=meta,
    )


def r_mpf(r: Fraction, ctx):
    return ctx.mp.mpf(r.numerator) / r.denominator


# -- evaluation ------------------------------------------------------------


def _params(values):
    return [(Fraction(v).numerator, Fraction(v).denominator) for v in values]


def _cap(spec: FormulaSpec, target_digits: int) -> int:
    return int(target_digits / max(spec.digits_per_term, 1e-9) * 3) + 100


def _series_terms(spec: FormulaSpec, target_digits: int, ctx, keep_terms: bool):
    """Return ``(s0, s1, s2, nterms, terms)`` in fixed point at ``ctx.bits``."""
    mp = ctx.mp
    bits = ctx.bits
    cap = _cap(spec, target_digits)
    c = spec.multiplier
    # size of the multiplier near the expected last term
    nf = target_digits / max(spec.digits_per_term, 1e-9) + 2
    scale = 1 + abs(c[0]) + abs(c[1]) * nf + abs(c[2]) * nf * nf
    tol = max(to_fixed(mp.mpf(10) ** (-(target_digits + 5)) / scale, bits), 1)
    if spec.scheme == "hyper":
        s0, s1, s2, n, terms = kernels.hyper_series(
            to_fixed(spec.z, bits), bits, _params(spec.upper), _params(spec.lower), tol, cap,
            keep_terms,
        )
        if n < 0:
            raise ConvergenceError(f"{spec.family}: series exceeded its cap of {cap} terms")
        return s0, s1, s2, n, terms
    order = 2 if spec.scheme == "B2" else 3
    zf = to_fixed(spec.z, bits)
    zpow = 1 << bits
    s0 = s1 = s2 = 0
    terms = [] if keep_terms else None
    prev = None
    for n in range(cap):
        w = _B_weight(order, n, B_INDEX_CONVENTION)
        t = zpow * w.numerator // w.denominator
        at = abs(t)
        if t == 0 or (at < tol and (prev is None or at <= prev)):
            return s0, s1, s2, n, terms
        s0 += t
        s1 += n * t
        s2 += n * n * t
        if keep_terms:
            terms.append(t)
        prev = at
        zpow = (zpow * zf) >> bits
    raise ConvergenceError(f"{spec.family}: series exceeded its cap of {cap} terms")


def evaluate_series(spec: FormulaSpec, target_digits: int, ctx: PrecisionContext):
    """Partial sum accurate to about *target_digits*; returns ``(value, terms_used)``."""
    if target_digits > ctx.digits:
        raise PrecisionError(f"target {target_digits} digits exceeds context digits {ctx.digits}")
    s0, s1, s2, n, _ = _series_terms(spec, target_digits, ctx, False)
    c = spec.multiplier
    bits = ctx.bits
    value = c[0] * from_fixed(s0, bits, ctx) + c[1] * from_fixed(s1, bits, ctx)
    if c[2]:
        value += c[2] * from_fixed(s2, bits, ctx)
    return value, n


@dataclass(frozen=True)
class VerificationReport:
    terms_used: int
    abs_error: object
    measured_digits_per_term: float | None
    passed: bool
    digits: int

    def to_json(self) -> dict:
        from .precision import format_scientific

        return {
            "terms_used": self.terms_used,
            "abs_error": format_scientific(self.abs_error),
            "measured_digits_per_term": (
                None if self.measured_digits_per_term is None
                else round(self.measured_digits_per_term, 6)
            ),
            "passed": self.passed,
            "digits": self.digits,
        }


def _slope(xs, ys):
    n = len(xs)
    mx = sum(xs) / n
    my = sum(ys) / n
    sxx = sum((x - mx) ** 2 for x in xs)
    sxy = sum((x - mx) * (y - my) for x, y in zip(xs, ys))
    return sxy / sxx


def verify_formula(spec: FormulaSpec, digits: int, ctx: PrecisionContext) -> VerificationReport:
    """Sum *spec* to *digits* and compare with its right-hand side.

    The measured rate is the least-squares slope of ``-log10 |S_n - rhs|``
    against n over the last half of the terms above the noise floor.
    """
    if ctx.digits < digits + 10:
        raise PrecisionError(f"verification at {digits} digits needs context digits >= {digits + 10}")
    mp = ctx.mp
    bits = ctx.bits
    s0, s1, s2, n, terms = _series_terms(spec, digits, ctx, True)
    c = spec.multiplier
    rhs = spec.rhs_factor / pi_const(ctx) ** spec.pi_power
    total = c[0] * from_fixed(s0, bits, ctx) + c[1] * from_fixed(s1, bits, ctx)
    if c[2]:
        total += c[2] * from_fixed(s2, bits, ctx)
    abs_error = abs(total - rhs)

    floor = mp.mpf(10) ** (-(ctx.dps - 5))
    partial = mp.mpf(0)
    xs, ys = [], []
    for i, t in enumerate(terms):
        partial += from_fixed(t, bits, ctx) * (c[0] + c[1] * i + c[2] * i * i)
        err = abs(partial - rhs)
        if err > floor * max(1, abs(rhs)):
            xs.append(i)
            ys.append(float(-mp.log10(err)))
    rate = None
    if len(xs) >= 2:
        h = max(2, len(xs) // 2)
        rate = _slope(xs[-h:], ys[-h:])
    passed = bool(abs_error < mp.mpf(10) ** (-(digits - 5)))
    return VerificationReport(n, abs_error, rate, passed, digits)


def pi_from_formula(spec: FormulaSpec, digits: int, ctx: PrecisionContext):
    """Invert the formula for pi: ``pi = (rhs_factor / S)^(1/pi_power)``."""
    value, n = evaluate_series(spec, digits, ctx)
    mp = ctx.mp
    if value <= 0:
        raise PrecisionError(f"{spec.family}: partial sum is not positive; raise the precision")
    est = spec.rhs_factor / value
    if spec.pi_power == 2:
        est = mp.sqrt(est)
    elif spec.pi_power != 1:
        est = est ** (mp.mpf(1) / spec.pi_power)
    return est, n
