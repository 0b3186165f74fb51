"""Working-precision contract, decimal I/O, pi and the AGM kernel.

Each :class:`PrecisionContext` owns a private mpmath context fixed at
``digits + guard`` decimal digits, so no global mpmath state is touched.
"""

from __future__ import annotations

import math
import os
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from mpmath import libmp
from mpmath.ctx_mp import MPContext

from .errors import DomainError, PrecisionError

MIN_DIGITS = 10
MIN_GUARD = 20
GUARD_ENV = "RPF_GUARD_DIGITS"

# Decimal strings: optional sign, integer part, optional fraction, optional exponent.
_DECIMAL_RE = re.compile(r"^\s*[+-]?(\d+(\.\d*)?|\.\d+)([eE][+-]?\d+)?\s*$")


@lru_cache(maxsize=None)
def _mp_for(dps: int) -> MPContext:
    mp = MPContext()
    mp.dps = dps
    return mp


@dataclass(frozen=True)
class PrecisionContext:
    """Requested decimal digits plus internal guard digits."""

    digits: int
    guard: int

    def __post_init__(self):
        if self.digits < MIN_DIGITS:
            raise PrecisionError(
                f"digits={self.digits} is below the minimum of {MIN_DIGITS} for any formula family"
            )
        if self.guard < MIN_GUARD:
            raise PrecisionError(f"guard={self.guard} is below the minimum of {MIN_GUARD}")

    @property
    def dps(self) -> int:
        """Internal working precision in decimal digits."""
        return self.digits + self.guard

    @property
    def mp(self) -> MPContext:
        return _mp_for(self.dps)

    @property
    def bits(self) -> int:
        """Fixed-point fraction bits used by the integer kernels."""
        return self.mp.prec + 16

    def eps(self):
        """``10**-(digits + guard)``, the truncation threshold for series."""
        return self.mp.mpf(10) ** (-self.dps)

    def reported(self, x) -> "BigReal":
        return BigReal(self.mp.mpf(x), self.digits)

    def with_digits(self, digits: int) -> "PrecisionContext":
        return make_context(digits)


def make_context(digits: int) -> PrecisionContext:
    """Build a context with the guard policy ``max(20, digits // 10)``.

    The environment variable ``RPF_GUARD_DIGITS`` overrides the policy.
    """
    digits = int(digits)
    if digits < MIN_DIGITS:
        raise PrecisionError(
            f"digits={digits} is below the minimum of {MIN_DIGITS} for any formula family"
        )
    override = os.environ.get(GUARD_ENV, "").strip()
    if override:
        try:
            guard = int(override)
        except ValueError:
            raise PrecisionError(f"{GUARD_ENV}={override!r} is not an integer") from None
    else:
        guard = max(MIN_GUARD, digits // 10)
    return PrecisionContext(digits, guard)


def to_fixed(x, bits: int) -> int:
    """Return ``round_down(x * 2**bits)`` as a Python int."""
    return libmp.to_fixed(x._mpf_, bits)


def from_fixed(n: int, bits: int, ctx: PrecisionContext):
    return ctx.mp.mpf((n, -bits))


def to_mpf(x, ctx: PrecisionContext):
    """Convert ints, Fractions, decimal strings, BigReal or mpf to the context's mpf."""
    mp = ctx.mp
    if isinstance(x, BigReal):
        return mp.mpf(x.value)
    if isinstance(x, Fraction):
        return mp.mpf(x.numerator) / x.denominator
    if isinstance(x, str):
        return parse_decimal(x, ctx)
    return mp.mpf(x)


def parse_rational(r) -> Fraction:
    """Parse ``r`` given as int, Fraction or a string like ``"58"``, ``"5/2"``, ``"0.25"``."""
    if isinstance(r, Fraction):
        return r
    if isinstance(r, int):
        return Fraction(r)
    if isinstance(r, float):
        return Fraction(r).limit_denominator(10**12)
    try:
        return Fraction(str(r).strip())
    except (ValueError, ZeroDivisionError):
        raise DomainError(f"cannot read {r!r} as a rational number") from None


def sqrt_rational(r: Fraction, ctx: PrecisionContext):
    mp = ctx.mp
    return mp.sqrt(mp.mpf(r.numerator) / r.denominator)


# -- decimal I/O -----------------------------------------------------------


def significant_digits(text: str) -> int:
    """Count significant digits in a decimal string (exponent ignored)."""
    mantissa = re.split(r"[eE]", text.strip())[0].lstrip("+-").replace(".", "")
    stripped = mantissa.lstrip("0")
    return max(len(stripped), 1)


def parse_decimal(text: str, ctx: PrecisionContext):
    if not _DECIMAL_RE.match(text):
        raise DomainError(f"not a decimal number: {text!r}")
    return ctx.mp.mpf(text.strip())


def format_decimal(x, digits: int) -> str:
    """Fixed-point decimal string with *digits* significant digits."""
    mp = _mp_for(max(digits + 5, 15))
    x = mp.mpf(x)
    if not x:
        return "0.0"
    s = mp.nstr(x, digits, strip_zeros=False, min_fixed=-(10**9), max_fixed=10**9)
    if "." not in s:
        s += ".0"
    return s


def format_scientific(x, digits: int = 6) -> str:
    """Short scientific-notation string, for error magnitudes and residuals."""
    mp = _mp_for(max(digits + 5, 15))
    return mp.nstr(mp.mpf(x), digits, min_fixed=1, max_fixed=0)


@dataclass(frozen=True)
class BigReal:
    """An arbitrary-precision real with the number of digits it is trusted to."""

    value: object
    digits: int

    @classmethod
    def parse(cls, text: str, digits: int | None = None) -> "BigReal":
        if not _DECIMAL_RE.match(text):
            raise DomainError(f"not a decimal number: {text!r}")
        if digits is None:
            digits = significant_digits(text)
        mp = _mp_for(max(digits, significant_digits(text)) + 10)
        return cls(mp.mpf(text.strip()), digits)

    def __str__(self) -> str:
        return format_decimal(self.value, self.digits)

    def __float__(self) -> float:
        return float(self.value)

    def to_json(self) -> dict:
        return {"value": str(self), "digits": self.digits}


# -- constants and AGM -----------------------------------------------------


@lru_cache(maxsize=64)
def _pi_gauss_legendre(dps: int):
    mp = _mp_for(dps + 10)
    a = mp.mpf(1)
    b = 1 / mp.sqrt(2)
    t = mp.mpf(1) / 4
    p = 1
    tol = mp.mpf(10) ** (-(dps + 5))
    while abs(a - b) > tol:
        a_next = (a + b) / 2
        b = mp.sqrt(a * b)
        t -= p * (a - a_next) ** 2
        a = a_next
        p *= 2
    return (a + b) ** 2 / (4 * t)


def pi_const(ctx: PrecisionContext):
    """pi at the context's working precision (Gauss-Legendre iteration)."""
    return ctx.mp.mpf(_pi_gauss_legendre(ctx.dps))


def agm(a, b, ctx: PrecisionContext):
    """Arithmetic-geometric mean of two positive reals."""
    mp = ctx.mp
    a = to_mpf(a, ctx)
    b = to_mpf(b, ctx)
    if a <= 0 or b <= 0:
        raise DomainError("agm requires positive arguments")
    tol = ctx.eps()
    # scale-free stop: quadratic convergence means one step past |a-b| < tol*a suffices
    for _ in range(4 * int(math.log2(ctx.mp.prec + 2)) + 60):
        if abs(a - b) <= tol * a:
            return (a + b) / 2
        a_next, b_next = (a + b) / 2, mp.sqrt(a * b)
        if a_next == a and b_next == b:  # stuck at the last ulp
            return a
        a, b = a_next, b_next
    raise PrecisionError("agm iteration did not settle")  # pragma: no cover
