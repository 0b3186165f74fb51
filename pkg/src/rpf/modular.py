"""Modular quantities at ``tau = sqrt(-r)`` and class numbers.

Everything is evaluated on the real line through real nomes, so no complex
branch choices arise.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from . import kernels
from .elliptic import _alpha, _modulus_pair, hyper_pFq
from .errors import ConsistencyError, ConvergenceError, DomainError
from .precision import (
    PrecisionContext,
    from_fixed,
    parse_rational,
    pi_const,
    sqrt_rational,
    to_fixed,
    to_mpf,
)

J_ROUTES = ("eta", "modulus", "eisenstein")


def _rational(r, minimum=None):
    """Parse r and require ``r > 0`` (or ``r >= minimum`` when given)."""
    r = parse_rational(r)
    if minimum is None:
        if r <= 0:
            raise DomainError(f"r={r} must be positive")
    elif r < minimum:
        raise DomainError(f"r={r} must be >= {minimum}")
    return r


# -- eta and j -------------------------------------------------------------


def dedekind_eta_q(q24root, qfull, ctx: PrecisionContext):
    """``q24root * prod_{n>=1} (1 - qfull^n)`` for real nomes in (0, 1)."""
    q24root = to_mpf(q24root, ctx)
    qfull = to_mpf(qfull, ctx)
    for v in (q24root, qfull):
        if v <= 0 or v >= 1:
            raise DomainError("eta arguments must lie in (0, 1)")
    bits = ctx.bits
    tol = max(to_fixed(ctx.eps(), bits), 1)
    prod, _ = kernels.euler_product(to_fixed(qfull, bits), bits, tol)
    return q24root * from_fixed(prod, bits, ctx)


def _eta_at(r: Fraction, ctx, half=False):
    """Dedekind eta at ``sqrt(-r)`` (or at ``sqrt(-r)/2`` when *half*)."""
    mp = ctx.mp
    x = pi_const(ctx) * sqrt_rational(r, ctx)
    if half:
        return dedekind_eta_q(mp.exp(-x / 24), mp.exp(-x), ctx)
    return dedekind_eta_q(mp.exp(-x / 12), mp.exp(-2 * x), ctx)


def eta_quotient(r, ctx: PrecisionContext, *, check=True):
    """``eta(z)/eta(z/2)`` at ``z = sqrt(-r)``, cross-checked against the modulus form."""
    r = _rational(r)
    mp = ctx.mp
    value = _eta_at(r, ctx) / _eta_at(r, ctx, half=True)
    if check:
        k, kp = _modulus_pair(r, ctx)
        other = mp.root(k, 12) / (mp.cbrt(mp.sqrt(2)) * mp.root(kp, 6))
        if abs(value - other) > mp.mpf(10) ** (-(ctx.digits - 5)) * abs(other):
            raise ConsistencyError(f"eta quotient disagrees with modulus form at r={r}")
    return value


@dataclass(frozen=True)
class EisensteinTriple:
    P: object
    Q: object
    R: object


def eisenstein_PQR(qsigned, ctx: PrecisionContext) -> EisensteinTriple:
    """Lambert-series values of P, Q, R at a real (possibly negative) nome."""
    mp = ctx.mp
    q = to_mpf(qsigned, ctx)
    if abs(q) >= 1:
        raise DomainError("Eisenstein series need |q| < 1")
    if q == 0:
        return EisensteinTriple(mp.mpf(1), mp.mpf(1), mp.mpf(1))
    bits = ctx.bits
    tol = max(to_fixed(ctx.eps(), bits), 1)
    s1, s3, s5, _ = kernels.lambert_sums(to_fixed(q, bits), bits, tol)
    return EisensteinTriple(
        1 - 24 * from_fixed(s1, bits, ctx),
        1 + 240 * from_fixed(s3, bits, ctx),
        1 - 504 * from_fixed(s5, bits, ctx),
    )


@lru_cache(maxsize=256)
def _j_modulus(r: Fraction, ctx):
    k, kp = _modulus_pair(r, ctx)
    mm = (k * kp) ** 2
    return 256 * (1 - mm) ** 3 / (mm * mm)


def j_invariant(r, route: str = "modulus", ctx: PrecisionContext = None):
    """Klein j at ``sqrt(-r)`` by the eta quotient, the singular modulus or Eisenstein series."""
    r = _rational(r)
    mp = ctx.mp
    if route == "modulus":
        return _j_modulus(r, ctx)
    if route == "eta":
        x = 1 / eta_quotient(r, ctx, check=False)
        return (x**16 + 16 / x**8) ** 3
    if route == "eisenstein":
        q = mp.exp(-2 * pi_const(ctx) * sqrt_rational(r, ctx))
        e = eisenstein_PQR(q, ctx)
        Q3 = e.Q**3
        return 1728 * Q3 / (Q3 - e.R**2)
    raise DomainError(f"unknown j route {route!r}; choose from {J_ROUTES}")


# -- t_r, beta_r, J_r, T_r -------------------------------------------------


def t_r(r, ctx: PrecisionContext, route: str = "eisenstein", *, nome_sign: int = 1):
    """The Eisenstein quotient ``Q/R (P - 6/(pi sqrt r))`` at ``nome_sign * exp(-pi sqrt r)``.

    With the positive nome this equals ``T_{r/4}``, and so agrees with
    ``route="closed"``, which is built from ``k_{r/4}``, ``a(r/4)`` and
    ``beta_{r/4}`` and needs ``r > 4``.  ``nome_sign=-1`` evaluates the same
    quotient at the negated nome; it differs from the closed form by
    ``O(exp(-pi sqrt r))``.
    """
    r = _rational(r)
    mp = ctx.mp
    if route == "eisenstein":
        if nome_sign not in (1, -1):
            raise DomainError("nome_sign must be +1 or -1")
        e = eisenstein_PQR(nome_sign * nome_value(r, ctx), ctx)
        if abs(e.R) < mp.mpf(10) ** (-(ctx.digits // 2)):
            raise DomainError(f"R vanishes at r={r}; t_r is singular there")
        return e.Q / e.R * (e.P - 6 / (pi_const(ctx) * sqrt_rational(r, ctx)))
    if route == "closed":
        s = r / 4
        if s <= 1:
            raise DomainError("closed-form t_r needs r > 4 (1 - 2 beta_{r/4} vanishes at r = 4)")
        k, _ = _modulus_pair(s, ctx)
        m = k * k
        a = _alpha(s, ctx)[0]
        return (1 + m - 6 / sqrt_rational(r, ctx) * a) / (
            mp.sqrt(1 - m + m * m) * _sqrt_one_minus_J(s, ctx)
        )
    raise DomainError(f"unknown t_r route {route!r}")


def nome_value(r: Fraction, ctx):
    return ctx.mp.exp(-pi_const(ctx) * sqrt_rational(r, ctx))


@lru_cache(maxsize=256)
def _sqrt_one_minus_J(r: Fraction, ctx):
    """``sqrt(1 - J_r) = 1 - 2 beta_r`` from the factored ``j - 1728`` (no cancellation near r = 1)."""
    mp = ctx.mp
    if r < 1:
        raise DomainError(f"r={r} must be >= 1")
    k, kp = _modulus_pair(r, ctx)
    lam, lamp = k * k, kp * kp
    j = _j_modulus(r, ctx)
    # j - 1728 = 64 (1+lam)^2 (2-lam)^2 (1-2lam)^2 / (lam (1-lam))^2, with 1 - 2 lam = k'^2 - k^2
    return abs(8 * (1 + lam) * (1 + lamp) * (kp - k) * (kp + k) / (lam * lamp * mp.sqrt(j)))


def sqrt_one_minus_J(r, ctx: PrecisionContext):
    return _sqrt_one_minus_J(_rational(r, 1), ctx)


@lru_cache(maxsize=256)
def _beta(r: Fraction, ctx):
    mp = ctx.mp
    if r == 1:
        return mp.mpf(1) / 2  # j_1 = 1728 exactly
    j = _j_modulus(r, ctx)
    if j < 1728 * (1 - mp.mpf(10) ** (-(ctx.digits // 2))):
        raise ConsistencyError(f"j_r = {mp.nstr(j, 10)} < 1728 at r={r}")
    # (1 - sqrt(1-J))/2 rewritten to avoid cancellation for tiny J
    return 1728 / j / (2 * (1 + _sqrt_one_minus_J(r, ctx)))


def beta_r(r, ctx: PrecisionContext):
    """Sextic-base value ``beta_r <= 1/2`` solving ``j_r = 432/(beta (1 - beta))``."""
    return _beta(_rational(r, 1), ctx)


def hyp2f1_complement(a, w, ctx: PrecisionContext):
    """``2F1(a, 1-a; 1; 1-w)`` for small ``w > 0`` via the logarithmic connection series.

    The direct series at ``1 - w`` converges too slowly once w is small.
    """
    mp = ctx.mp
    a = parse_rational(a)
    w = to_mpf(w, ctx)
    if w <= 0 or w >= 1:
        raise DomainError("complement argument w must lie in (0, 1)")
    am = mp.mpf(a.numerator) / a.denominator
    bm = 1 - am
    h = -2 * mp.euler - mp.digamma(am) - mp.digamma(bm) - mp.log(w)
    c = mp.mpf(1)
    total = c * h
    tol = ctx.eps()
    rate = -math.log10(float(w))
    cap = int(50 * ctx.dps / rate) + 1000
    for n in range(cap):
        c *= (am + n) * (bm + n) / ((n + 1) ** 2) * w
        h += 2 / mp.mpf(n + 1) - 1 / (am + n) - 1 / (bm + n)
        term = c * h
        total += term
        if abs(term) < tol * abs(total):
            return mp.sin(pi_const(ctx) * am) / pi_const(ctx) * total
    raise ConvergenceError(f"complement series did not converge in {cap} terms")


def _ratio(a, b, w, ctx):
    return hyp2f1_complement(a, w, ctx) / hyper_pFq([a, b], [1], w, ctx)


def invert_hyper_ratio(a, b, r, ctx: PrecisionContext):
    """Return ``w in (0, 1/2]`` with ``2F1(a,b;1;1-w) / 2F1(a,b;1;w) = sqrt(r)``.

    Bisection brackets the root; secant steps kept inside the bracket
    finish the refinement.
    """
    a = parse_rational(a)
    b = parse_rational(b)
    if (a, b) not in ((Fraction(1, 6), Fraction(5, 6)), (Fraction(1, 3), Fraction(2, 3))):
        raise DomainError("only (1/6, 5/6) and (1/3, 2/3) are supported")
    r = _rational(r, 1)
    mp = ctx.mp
    if r == 1:
        return mp.mpf(1) / 2
    target = sqrt_rational(r, ctx)
    f = lambda w: _ratio(a, b, w, ctx) - target  # noqa: E731

    hi = mp.mpf(1) / 2
    # asymptotically ratio ~ (sin(pi a)/pi) * log(c/w); start below that estimate
    sa = math.sin(math.pi * float(a))
    lo_exp = -math.pi * float(target) / sa / math.log(10) - 3
    lo = mp.mpf(10) ** int(lo_exp)
    for _ in range(60):
        if f(lo) > 0:
            break
        lo /= 1000
    else:
        raise ConvergenceError(f"could not bracket the ratio root at r={r}")
    flo, fhi = f(lo), f(hi)
    tol = mp.mpf(10) ** (-(ctx.dps - 3))
    for _ in range(60):  # coarse bisection in log scale, then linear
        mid = mp.sqrt(lo * hi) if hi / lo > 4 else (lo + hi) / 2
        fm = f(mid)
        if fm > 0:
            lo, flo = mid, fm
        else:
            hi, fhi = mid, fm
        if (hi - lo) < mp.mpf(10) ** -12 * hi:
            break
    # safeguarded secant
    x0, f0, x1, f1 = lo, flo, hi, fhi
    for _ in range(4 * ctx.dps):
        if f1 == f0:
            break
        x2 = x1 - f1 * (x1 - x0) / (f1 - f0)
        if not (lo < x2 < hi):
            x2 = (lo + hi) / 2
        f2 = f(x2)
        if f2 > 0:
            lo, flo = x2, f2
        else:
            hi, fhi = x2, f2
        x0, f0, x1, f1 = x1, f1, x2, f2
        if abs(f2) < tol * target:
            break
    if abs(f1) > mp.mpf(10) ** (-(ctx.digits - 5)) * target:
        raise ConvergenceError(f"ratio inversion did not converge at r={r}")
    return x1


@lru_cache(maxsize=128)
def _alpha3(r: Fraction, ctx):
    return invert_hyper_ratio(Fraction(1, 3), Fraction(2, 3), r, ctx)


def alpha3(r, ctx: PrecisionContext):
    """Cubic-base singular value from the ``2F1(1/3, 2/3)`` ratio."""
    return _alpha3(_rational(r, 1), ctx)


def J_T_pair(r, ctx: PrecisionContext):
    """``(J_r, T_r)`` with ``J_r = 1728/j_r``; T_r is singular at r = 1."""
    r = _rational(r, 1)
    if r == 1:
        raise DomainError("T_r is singular at r = 1 (1 - 2 beta_r = 0)")
    mp = ctx.mp
    k, _ = _modulus_pair(r, ctx)
    m = k * k
    a = _alpha(r, ctx)[0]
    J = 1728 / _j_modulus(r, ctx)
    T = (1 + m - 3 * a / sqrt_rational(r, ctx)) / (mp.sqrt(1 - m + m * m) * _sqrt_one_minus_J(r, ctx))
    return J, T


def T_alternate(r, ctx: PrecisionContext):
    """``T_r`` through ``2 j^{1/3} sigma(r) G_r^8 / (sqrt(r) sqrt(j - 1728))``."""
    r = _rational(r, 1)
    mp = ctx.mp
    j = _j_modulus(r, ctx)
    return 2 * mp.cbrt(j) * sigma_r(r, ctx) * weber_G(r, ctx) ** 8 / (
        sqrt_rational(r, ctx) * mp.sqrt(j - 1728)
    )


def weber_G(r, ctx: PrecisionContext):
    """Weber class invariant ``G_r = (4 k^2 k'^2)^{-1/24}``."""
    r = _rational(r)
    k, kp = _modulus_pair(r, ctx)
    return ctx.mp.root(4 * (k * kp) ** 2, 24) ** -1


def sigma_r(r, ctx: PrecisionContext):
    """``2 sqrt(r) (1 + k_r^2) - 6 a(r)``."""
    r = _rational(r)
    k, _ = _modulus_pair(r, ctx)
    return 2 * sqrt_rational(r, ctx) * (1 + k * k) - 6 * _alpha(r, ctx)[0]


@dataclass(frozen=True)
class ModularData:
    r: Fraction
    j: object
    beta: object
    bigJ: object
    bigT: object  # None at r = 1
    t: object  # None where R vanishes (r = 4)
    weberG: object
    sigma: object
    digits: int


def modular_data(r, ctx: PrecisionContext) -> ModularData:
    r = _rational(r, 1)
    J, T = J_T_pair(r, ctx) if r != 1 else (1728 / _j_modulus(r, ctx), None)
    try:
        t = t_r(r, ctx)
    except DomainError:  # r = 4, where R vanishes
        t = None
    return ModularData(
        r,
        _j_modulus(r, ctx),
        _beta(r, ctx),
        J,
        T,
        t,
        weber_G(r, ctx),
        sigma_r(r, ctx),
        ctx.digits,
    )


# -- class numbers ---------------------------------------------------------


def jacobi_symbol(a: int, n: int) -> int:
    """Jacobi symbol ``(a|n)``; even n is handled with the Kronecker rules at 2."""
    if n < 1:
        raise DomainError("lower argument must be a positive integer")
    result = 1
    while n % 2 == 0:
        n //= 2
        if a % 2 == 0:
            return 0
        if a % 8 in (3, 5):
            result = -result
    a %= n
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


def _squarefree(m: int) -> bool:
    p = 2
    while p * p <= m:
        if m % (p * p) == 0:
            return False
        p += 1
    return True


def is_fundamental(d: int) -> bool:
    """True when -d is a fundamental discriminant."""
    if d < 3:
        return False
    if d % 4 == 3:
        return _squarefree(d)
    if d % 4 == 0:
        m = d // 4
        return m % 4 in (1, 2) and _squarefree(m)
    return False


def class_number(d: int) -> int:
    """``h(-d) = -(w(d)/(2d)) sum_{n<d} (-d|n) n`` evaluated in exact integers.

    The formula counts reduced forms only for fundamental discriminants -d;
    other d raise :class:`DomainError`, as does a sum that is not a positive
    integer.
    """
    d = int(d)
    if d < 3:
        raise DomainError(f"d={d} is too small for a negative discriminant -d")
    if d % 4 not in (0, 3):
        raise DomainError(f"-{d} is not a discriminant (need d = 0 or 3 mod 4)")
    if not is_fundamental(d):
        raise DomainError(f"-{d} is not a fundamental discriminant; the formula does not apply")
    w = 6 if d == 3 else 4 if d == 4 else 2
    total = sum(jacobi_symbol(-d, n) * n for n in range(1, d))
    num = -w * total
    den = 2 * d
    if num % den or num <= 0:
        raise DomainError(f"class-number sum is not a positive integer at d={d}: {Fraction(num, den)}")
    return num // den
