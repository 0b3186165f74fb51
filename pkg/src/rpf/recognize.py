"""Integer-relation recognition of algebraic constants and root refinement.

For each degree d the lattice spanned by the rows ``(e_i, round(C x^i))``,
``i = 0..d``, is LLL-reduced; a short vector's first d+1 entries are the
coefficients of a candidate polynomial.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import reduce

from . import kernels
from .errors import ConsistencyError, DomainError, PrecisionError
from .modular import class_number
from .precision import (
    BigReal,
    PrecisionContext,
    format_scientific,
    significant_digits,
    to_mpf,
)

MARGIN = 10
# digits required per unit of maxDegree before a search is attempted
DIGITS_PER_DEGREE = 10


@dataclass(frozen=True)
class MinimalPolynomialCandidate:
    coeffs: tuple  # ascending degree, content-free, leading coefficient > 0
    degree: int
    residual: object
    height_bits: int
    digits: int

    @property
    def height_digits(self) -> int:
        return max(len(str(abs(c))) for c in self.coeffs)

    def pretty(self, var: str = "x") -> str:
        text = ""
        for i in range(self.degree, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            mono = "" if i == 0 else (var if i == 1 else f"{var}^{i}")
            mag = abs(c)
            body = str(mag) if not mono else (mono if mag == 1 else f"{mag}*{mono}")
            if not text:
                text = body if c > 0 else "-" + body
            else:
                text += (" - " if c < 0 else " + ") + body
        return text

    def to_json(self) -> dict:
        return {
            "coeffs": [str(c) for c in self.coeffs],
            "degree": self.degree,
            "residual": format_scientific(self.residual),
            "height_bits": self.height_bits,
            "polynomial": self.pretty(),
        }


def normalize(coeffs) -> tuple:
    """Strip trailing zeros, divide out the content and make the leading coefficient positive."""
    c = list(coeffs)
    while c and c[-1] == 0:
        c.pop()
    if not c:
        raise DomainError("zero polynomial")
    g = reduce(math.gcd, (abs(v) for v in c))
    c = [v // g for v in c]
    if c[-1] < 0:
        c = [-v for v in c]
    return tuple(c)


def poly_eval(coeffs, x, ctx: PrecisionContext):
    mp = ctx.mp
    acc = mp.mpf(0)
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def _poly_eval_d(coeffs, x):
    acc = 0
    d = 0
    for c in reversed(coeffs):
        d = d * x + acc
        acc = acc * x + c
    return acc, d


def _trusted(x, ctx):
    if isinstance(x, BigReal):
        return to_mpf(x, ctx), min(x.digits, ctx.digits)
    if isinstance(x, str):
        return to_mpf(x, ctx), min(significant_digits(x), ctx.digits)
    if isinstance(x, float):
        return ctx.mp.mpf(x), 15
    return to_mpf(x, ctx), ctx.digits


def _accept_threshold(digits, degree, height_digits, mp):
    return mp.mpf(10) ** (-(digits - degree * height_digits - MARGIN))


def recognize_algebraic(x, max_degree: int, ctx: PrecisionContext, *, min_degree: int = 1):
    """Lowest-degree integer polynomial vanishing at *x*, or None if none is found.

    A candidate is accepted when its residual meets
    ``|p(x)| < 10^-(digits - degree*heightDigits - MARGIN)``, its height fits
    the lattice, ``(degree+1)*heightDigits + MARGIN <= digits - guard``, and
    its lattice vector is at least ``10^MARGIN`` shorter than every other
    reduced vector.
    Raises PrecisionError when the trusted digits cannot support *max_degree*.
    """
    if max_degree < 1:
        raise DomainError("max_degree must be at least 1")
    mp = ctx.mp
    x, digits = _trusted(x, ctx)
    if digits < DIGITS_PER_DEGREE * max_degree:
        raise PrecisionError(
            f"{digits} trusted digits cannot support degree {max_degree}; "
            f"need at least {DIGITS_PER_DEGREE * max_degree}"
        )
    lattice_digits = digits - ctx.guard
    if lattice_digits < MARGIN + 2:
        raise PrecisionError(f"{digits} digits leave no room for a relation after the guard")
    for d in range(max(1, min_degree), max_degree + 1):
        cand = _search_degree(x, d, digits, lattice_digits, ctx)
        if cand is not None:
            return cand
    return None


def _search_degree(x, d, digits, lattice_digits, ctx):
    mp = ctx.mp
    powers = [mp.mpf(1)]
    for _ in range(d):
        powers.append(powers[-1] * x)
    top = max(abs(p) for p in powers)
    scale = mp.mpf(10) ** lattice_digits / top
    basis = []
    for i in range(d + 1):
        row = [0] * (d + 1)
        row[i] = 1
        row.append(int(mp.nint(scale * powers[i])))
        basis.append(row)
    try:
        reduced = kernels.lll_reduce(basis)
    except ValueError:
        return None
    # a genuine relation is far shorter than every other reduced vector
    sizes = [sum(v * v for v in row).bit_length() / 2 for row in reduced]
    gap_bits = MARGIN * math.log2(10)
    for idx, row in enumerate(reduced):
        coeffs = row[: d + 1]
        if coeffs[d] == 0:
            continue
        others = [b for j, b in enumerate(sizes) if j != idx]
        if others and min(others) - sizes[idx] < gap_bits:
            continue
        coeffs = normalize(coeffs)
        hd = max(len(str(abs(c))) for c in coeffs)
        if (d + 1) * hd + MARGIN > lattice_digits:
            continue
        residual = abs(poly_eval(coeffs, x, ctx))
        if residual >= _accept_threshold(digits, d, hd, mp):
            continue
        height_bits = max(abs(c) for c in coeffs).bit_length()
        return MinimalPolynomialCandidate(coeffs, d, residual, height_bits, digits)
    return None


def select_root(coeffs, approx, ctx: PrecisionContext):
    """Real root of the integer polynomial nearest *approx*, refined to working precision.

    The search window is ``max(1e-5, 10^(1-t)) * max(1, |approx|)`` where t is
    the number of digits *approx* is trusted to.
    """
    mp = ctx.mp
    coeffs = normalize(coeffs)
    if len(coeffs) < 2:
        raise DomainError("constant polynomial has no roots")
    x0, trusted = _trusted(approx, ctx)
    width = max(mp.mpf(10) ** -5, mp.mpf(10) ** (1 - trusted)) * max(1, abs(x0))
    lo_w, hi_w = x0 - width, x0 + width
    pieces = 64
    grid = [lo_w + (hi_w - lo_w) * i / pieces for i in range(pieces + 1)]
    vals = [poly_eval(coeffs, g, ctx) for g in grid]
    brackets = []
    for i in range(pieces):
        if vals[i] == 0:
            brackets.append((grid[i], grid[i]))
        elif vals[i] * vals[i + 1] < 0:
            brackets.append((grid[i], grid[i + 1]))
    if vals[-1] == 0:
        brackets.append((grid[-1], grid[-1]))
    if not brackets:
        root = _newton(coeffs, x0, None, ctx)
        if root is None or abs(root - x0) > width:
            raise ConsistencyError(
                f"no real root of the polynomial within {format_scientific(width, 3)} of the approximation"
            )
        return root
    lo, hi = min(brackets, key=lambda b: abs((b[0] + b[1]) / 2 - x0))
    if lo == hi:
        return lo
    return _newton(coeffs, (lo + hi) / 2, (lo, hi), ctx)


def _newton(coeffs, x, bracket, ctx):
    """Newton iteration; with a bracket, steps leaving it are replaced by bisection."""
    mp = ctx.mp
    tol = ctx.eps() * max(1, abs(x))
    if bracket is not None:
        lo, hi = bracket
        flo = poly_eval(coeffs, lo, ctx)
    for _ in range(20 * ctx.mp.prec):
        f, df = _poly_eval_d(coeffs, x)
        if f == 0:
            return x
        if bracket is not None:
            if (f < 0) == (flo < 0):
                lo, flo = x, f
            else:
                hi = x
        step = f / df if df else None
        nxt = x - step if step is not None else None
        if bracket is not None and (nxt is None or not (lo < nxt < hi)):
            nxt = (lo + hi) / 2
        if nxt is None:
            return None
        if abs(nxt - x) <= tol:
            return nxt
        if bracket is not None and hi - lo <= tol:
            return (lo + hi) / 2
        x = nxt
    return None if bracket is None else (lo + hi) / 2


def degree_heuristic(d: int) -> int:
    """Suggested maxDegree ``min(16 h(-d), 24)``, or 16 if the class number is unavailable."""
    if d < 1:
        raise DomainError("d must be positive")
    try:
        h = class_number(d)
    except DomainError:
        return 16
    return min(16 * h, 24)
