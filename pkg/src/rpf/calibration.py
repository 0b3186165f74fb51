"""Numerical calibration of three readings that the printed formulas leave open.

Each check evaluates every candidate reading against an independent identity
and returns a :class:`CalibrationResult`.  Exactly one candidate must pass;
the module constants in :mod:`rpf.elliptic` and :mod:`rpf.series` are the
chosen readings and :func:`run_all` asserts that they agree.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from . import elliptic, series
from .elliptic import hyper_pFq
from .errors import CalibrationError
from .precision import PrecisionContext, format_scientific, make_context


@dataclass(frozen=True)
class CalibrationResult:
    name: str
    residuals: dict  # candidate -> |residual|
    threshold: object
    passing: tuple
    chosen: object

    @property
    def resolved(self) -> bool:
        return len(self.passing) == 1 and self.passing[0] == self.chosen

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "residuals": {str(k): format_scientific(v) for k, v in self.residuals.items()},
            "threshold": format_scientific(self.threshold, 3),
            "passing": [str(p) for p in self.passing],
            "chosen": str(self.chosen),
            "resolved": self.resolved,
        }


def _result(name, residuals, threshold, chosen):
    passing = tuple(k for k, v in residuals.items() if v < threshold)
    return CalibrationResult(name, residuals, threshold, passing, chosen)


def _series_residual(spec, digits, ctx):
    value, _ = series.evaluate_series(spec, digits, ctx)
    return abs(value - spec.rhs)


def calibrate_alpha_power(ctx: PrecisionContext, r=2) -> CalibrationResult:
    """Power of K_s in a_s, tested on the fifth-base series at *r*."""
    digits = ctx.digits - ctx.guard // 2
    res = {}
    for p in (1, 2):
        spec = series.derive_formula("base5", r, ctx, alpha_power=p)
        res[p] = _series_residual(spec, digits, ctx)
    return _result("alpha_s_power", res, ctx.mp.mpf(10) ** (-(ctx.digits - 10)),
                   elliptic.ALPHA_S_POWER)


def calibrate_base3_exponent(ctx: PrecisionContext, r=2) -> CalibrationResult:
    """Exponent on alpha_3 inside a_{1/6}, tested on the cubic-base series at *r*."""
    digits = ctx.digits - ctx.guard // 2
    res = {}
    for e in (Fraction(1, 3), Fraction(1, 2)):
        spec = series.derive_formula("base3", r, ctx, base3_exponent=e)
        res[e] = _series_residual(spec, digits, ctx)
    return _result("base3_root_exponent", res, ctx.mp.mpf(10) ** (-(ctx.digits - 10)),
                   series.BASE3_ROOT_EXPONENT)


def b_convention_residual(convention: str, z, ctx: PrecisionContext, max_terms=None):
    """``|sum B2_n z^n/n!^2 - 2F1(1/2,1/2;1;z)^2|`` for one index reading.

    Terms are accumulated until they drop below the working epsilon or the
    term cap is reached; a divergent reading returns its (large) partial-sum
    discrepancy.
    """
    mp = ctx.mp
    z = mp.mpf(z)
    half = Fraction(1, 2)
    target = hyper_pFq([half, half], [1], z, ctx) ** 2
    if max_terms is None:
        max_terms = int(ctx.dps / float(-mp.log10(z))) + 50
    total = mp.mpf(0)
    zn = mp.mpf(1)
    eps = ctx.eps()
    for n in range(max_terms):
        w = series.coeff_B(2, n, convention)
        w = w / Fraction(math.factorial(n) ** 2)
        t = zn * w.numerator / w.denominator
        total += t
        if abs(t) < eps or abs(t) * eps > 1:  # converged, or plainly divergent
            break
        zn *= z
    return abs(total - target)


def calibrate_b_convention(ctx: PrecisionContext, z="0.3") -> CalibrationResult:
    res = {c: b_convention_residual(c, z, ctx) for c in ("j", "n")}
    return _result("b_index_convention", res, ctx.mp.mpf(10) ** (-(ctx.digits - 10)),
                   series.B_INDEX_CONVENTION)


def run_all(digits: int = 60) -> list:
    """Run the three calibrations; raise CalibrationError unless each is resolved."""
    ctx = make_context(digits)
    results = [
        calibrate_alpha_power(ctx),
        calibrate_base3_exponent(ctx),
        calibrate_b_convention(ctx),
    ]
    for res in results:
        if not res.resolved:
            raise CalibrationError(
                f"{res.name}: passing readings {res.passing}, configured {res.chosen}"
            )
    return results
