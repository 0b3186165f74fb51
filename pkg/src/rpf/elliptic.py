"""Complete elliptic integrals, singular moduli and the elliptic alpha function.

All functions take a :class:`~rpf.precision.PrecisionContext` and return
mpf values in that context's working precision.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from . import kernels
from .errors import ConsistencyError, ConvergenceError, DomainError
from .precision import (
    PrecisionContext,
    agm,
    from_fixed,
    parse_rational,
    pi_const,
    sqrt_rational,
    to_fixed,
    to_mpf,
)

# Power of K_s in the first term of the generalized alpha function.  Fixed by
# calibration against the fifth-base series (see rpf.calibration); the s = 0
# specialization is the classical pi/(4K^2).
ALPHA_S_POWER = 2

SIGNATURES = (Fraction(0), Fraction(1, 6), Fraction(1, 4), Fraction(1, 3))


def _as_params(values):
    out = []
    for v in values:
        f = parse_rational(v)
        out.append((f.numerator, f.denominator))
    return out


def hyper_pFq(upper, lower, z, ctx: PrecisionContext, *, max_terms=None):
    """Generalized hypergeometric series ``pFq(upper; lower; z)`` for ``|z| < 1``.

    Parameters are rationals (int, Fraction or ``"p/q"`` strings).  The sum
    stops once the running term is below ``10**-(digits+guard)`` and the
    terms are decreasing.
    """
    mp = ctx.mp
    z = to_mpf(z, ctx)
    if abs(z) >= 1:
        raise DomainError(f"hypergeometric argument |z| = {mp.nstr(abs(z), 8)} >= 1")
    for b in lower:
        f = parse_rational(b)
        if f <= 0 and f.denominator == 1:
            raise DomainError(f"lower parameter {f} is a non-positive integer")
    if z == 0:
        return mp.mpf(1)
    if max_terms is None:
        rate = -math.log10(float(abs(z)))
        max_terms = max(10**6, int(50 * ctx.dps / rate) + 1)
    bits = ctx.bits
    tol = max(to_fixed(ctx.eps(), bits), 1)
    s0, _, _, n, _ = kernels.hyper_series(
        to_fixed(z, bits), bits, _as_params(upper), _as_params(lower), tol, max_terms
    )
    if n < 0:
        raise ConvergenceError(f"hypergeometric series did not converge in {-n} terms")
    return from_fixed(s0, bits, ctx)


def _check_modulus(x, ctx, closed=False):
    x = to_mpf(x, ctx)
    if x < 0 or x > 1 or (x == 1 and not closed):
        raise DomainError(f"modulus {ctx.mp.nstr(x, 10)} outside [0, 1{']' if closed else ')'}")
    return x


def _agm_KE(x, xprime, ctx):
    """Return ``(K(x), S)`` with ``E(x) = K(x) * (1 - S)``, via one AGM sweep.

    *xprime* must be ``sqrt(1 - x^2)``; passing it separately avoids the
    cancellation when x is close to 1.
    """
    mp = ctx.mp
    a = mp.mpf(1)
    b = xprime
    c = x
    weight = mp.mpf(1) / 2
    s = weight * c * c
    tol = ctx.eps()
    while abs(a - b) > tol * a:
        a, b, c = (a + b) / 2, mp.sqrt(a * b), (a - b) / 2
        weight *= 2
        s += weight * c * c
    return pi_const(ctx) / (2 * a), s


def elliptic_K(x, ctx: PrecisionContext):
    """Complete elliptic integral of the first kind, modulus convention ``K(x)``."""
    mp = ctx.mp
    x = _check_modulus(x, ctx)
    return pi_const(ctx) / (2 * agm(1, mp.sqrt(1 - x * x), ctx))


def elliptic_K_complement(x, ctx: PrecisionContext):
    """``K(sqrt(1 - x^2))`` computed as ``pi / (2 agm(1, x))`` (no cancellation)."""
    x = to_mpf(x, ctx)
    if x <= 0 or x > 1:
        raise DomainError("complementary K needs 0 < x <= 1")
    return pi_const(ctx) / (2 * agm(1, x, ctx))


def elliptic_E(x, ctx: PrecisionContext):
    """Complete elliptic integral of the second kind, ``E(x)`` for ``0 <= x <= 1``."""
    mp = ctx.mp
    x = _check_modulus(x, ctx, closed=True)
    if x == 1:
        return mp.mpf(1)
    K, s = _agm_KE(x, mp.sqrt(1 - x * x), ctx)
    return K * (1 - s)


def dK_dk(x, ctx: PrecisionContext):
    """Derivative ``dK/dk = E/(k(1-k^2)) - K/k`` on the open interval (0, 1)."""
    mp = ctx.mp
    x = to_mpf(x, ctx)
    if x <= 0 or x >= 1:
        raise DomainError("dK/dk is singular at the endpoints of [0, 1]")
    K, s = _agm_KE(x, mp.sqrt(1 - x * x), ctx)
    E = K * (1 - s)
    return E / (x * (1 - x * x)) - K / x


def nome(r, ctx: PrecisionContext):
    """``exp(-pi sqrt(r))``."""
    r = parse_rational(r)
    if r <= 0:
        raise DomainError("r must be positive")
    return ctx.mp.exp(-pi_const(ctx) * sqrt_rational(r, ctx))


def _theta_sums(q, ctx):
    mp = ctx.mp
    q = to_mpf(q, ctx)
    if q <= 0 or q >= 1:
        raise DomainError("theta functions need 0 < q < 1")
    bits = ctx.bits
    tol = max(to_fixed(ctx.eps(), bits), 1)
    s3, s2, s4, _ = kernels.theta_sums(to_fixed(q, bits), bits, tol)
    theta3 = 1 + 2 * from_fixed(s3, bits, ctx)
    theta4 = 1 + 2 * from_fixed(s4, bits, ctx)
    theta2 = 2 * mp.root(q, 4) * from_fixed(s2, bits, ctx)
    return theta2, theta3, theta4


def theta23(q, ctx: PrecisionContext):
    """Jacobi theta constants ``(theta_2(q), theta_3(q))``."""
    t2, t3, _ = _theta_sums(q, ctx)
    return t2, t3


@lru_cache(maxsize=256)
def _modulus_pair(r: Fraction, dps_ctx: PrecisionContext):
    ctx = dps_ctx
    t2, t3, t4 = _theta_sums(nome(r, ctx), ctx)
    k = (t2 / t3) ** 2
    kp = (t4 / t3) ** 2
    # K(k')/K(k) = agm(1, k')/agm(1, k)
    ratio = agm(1, kp, ctx) / agm(1, k, ctx)
    root_r = sqrt_rational(r, ctx)
    if abs(ratio - root_r) > ctx.mp.mpf(10) ** (-(ctx.digits - 5)) * root_r:
        raise ConsistencyError(f"singular modulus check failed at r={r}")
    return k, kp


def modulus_pair(r, ctx: PrecisionContext):
    """Return ``(k_r, k'_r)``; ``k'_r`` comes from theta_4 so it is accurate for k near 1."""
    r = parse_rational(r)
    if r <= 0:
        raise DomainError("r must be positive")
    return _modulus_pair(r, ctx)


def singular_modulus(r, ctx: PrecisionContext):
    """Singular modulus ``k_r`` with ``K(k'_r)/K(k_r) = sqrt(r)``."""
    return modulus_pair(r, ctx)[0]


@lru_cache(maxsize=256)
def _alpha(r: Fraction, ctx: PrecisionContext):
    mp = ctx.mp
    k, kp = _modulus_pair(r, ctx)
    K, s = _agm_KE(k, kp, ctx)
    # E/K - 1 = -s, so a(r) = pi/(4K^2) + sqrt(r) s without cancellation
    return pi_const(ctx) / (4 * K * K) + sqrt_rational(r, ctx) * s, K, K * (1 - s)


def alpha(r, ctx: PrecisionContext):
    """Elliptic alpha function ``a(r) = pi/(4K^2) - sqrt(r) (E/K - 1)`` at ``k_r``."""
    r = parse_rational(r)
    if r <= 0:
        raise DomainError("r must be positive")
    return _alpha(r, ctx)[0]


@dataclass(frozen=True)
class EllipticData:
    r: Fraction
    q: object
    k: object
    kprime: object
    bigK: object
    bigE: object
    alpha: object
    digits: int


def elliptic_data(r, ctx: PrecisionContext) -> EllipticData:
    r = parse_rational(r)
    if r <= 0:
        raise DomainError("r must be positive")
    k, kp = _modulus_pair(r, ctx)
    a, K, E = _alpha(r, ctx)
    return EllipticData(r, nome(r, ctx), k, kp, K, E, a, ctx.digits)


# -- generalized (signature) integrals -------------------------------------


def _check_signature(s):
    s = parse_rational(s)
    if s not in SIGNATURES:
        raise DomainError(f"signature s={s} not in {{0, 1/6, 1/4, 1/3}}")
    return s


def generalized_KE(s, x, ctx: PrecisionContext):
    """``(K_s(x), E_s(x))`` from their Gauss 2F1 definitions."""
    s = _check_signature(s)
    x = _check_modulus(x, ctx)
    half = Fraction(1, 2)
    x2 = x * x
    pi = pi_const(ctx)
    Ks = pi / 2 * hyper_pFq([half - s, half + s], [1], x2, ctx)
    Es = pi / 2 * hyper_pFq([-half - s, half + s], [1], x2, ctx)
    return Ks, Es


@dataclass(frozen=True)
class GeneralizedEllipticData:
    s: Fraction
    x: object
    bigKs: object
    bigEs: object
    alphas: object


def generalized_alpha(s, x, r, ctx: PrecisionContext, *, power=None):
    """Generalized alpha ``pi cos(pi s)/((1+2s) 4 K_s^p) - sqrt(r) (E_s/K_s - 1)``.

    *power* defaults to the calibrated :data:`ALPHA_S_POWER`.
    """
    p = ALPHA_S_POWER if power is None else power
    if p not in (1, 2):
        raise DomainError("power of K_s must be 1 or 2")
    s = _check_signature(s)
    r = parse_rational(r)
    mp = ctx.mp
    Ks, Es = generalized_KE(s, x, ctx)
    pi = pi_const(ctx)
    first = pi * mp.cos(pi * (mp.mpf(s.numerator) / s.denominator))
    first /= (1 + 2 * (mp.mpf(s.numerator) / s.denominator)) * 4 * Ks**p
    return first - sqrt_rational(r, ctx) * (Es / Ks - 1)


def generalized_data(s, x, r, ctx: PrecisionContext) -> GeneralizedEllipticData:
    s = _check_signature(s)
    Ks, Es = generalized_KE(s, x, ctx)
    return GeneralizedEllipticData(s, to_mpf(x, ctx), Ks, Es, generalized_alpha(s, x, r, ctx))
