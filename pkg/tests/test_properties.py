from fractions import Fraction

from hypothesis import given, settings
from hypothesis import strategies as st

from rpf import BigReal, make_context
from rpf.elliptic import elliptic_E, elliptic_K, singular_modulus
from rpf.precision import agm
from rpf.recognize import poly_eval, recognize_algebraic

CTX = make_context(40)
pos = st.fractions(min_value=Fraction(1, 1000), max_value=1000)


def close(a, b, rel=1e-38):
    return abs(a - b) <= rel * max(abs(a), abs(b))


@given(pos, pos)
def test_agm_symmetric(a, b):
    assert close(agm(a, b, CTX), agm(b, a, CTX))


@given(pos, pos, pos)
def test_agm_homogeneous(a, b, t):
    assert close(agm(t * a, t * b, CTX), CTX.mp.mpf(t.numerator) / t.denominator * agm(a, b, CTX))


@given(pos, pos)
def test_agm_between_means(a, b):
    m = agm(a, b, CTX)
    lo, hi = sorted((CTX.mp.mpf(a.numerator) / a.denominator, CTX.mp.mpf(b.numerator) / b.denominator))
    assert lo * (1 - 1e-38) <= m <= hi * (1 + 1e-38)


@given(st.fractions(min_value=Fraction(1, 1000), max_value=Fraction(999, 1000)))
def test_legendre_relation(k):
    mp = CTX.mp
    x = mp.mpf(k.numerator) / k.denominator
    xp = mp.sqrt(1 - x * x)
    K, E = elliptic_K(x, CTX), elliptic_E(x, CTX)
    Kp, Ep = elliptic_K(xp, CTX), elliptic_E(xp, CTX)
    assert abs(E * Kp + Ep * K - K * Kp - mp.pi / 2) < mp.mpf(10) ** -37


@given(st.integers(min_value=1, max_value=10**30), st.integers(min_value=0, max_value=40))
def test_decimal_round_trip(n, shift):
    text = f"{n}e-{shift}"
    digits = len(str(n))
    b = BigReal.parse(text)
    assert b.digits == digits
    again = BigReal.parse(str(b), b.digits)
    assert again.value == b.value


@settings(max_examples=20, deadline=None)
@given(st.integers(min_value=2, max_value=60).filter(lambda n: int(n**0.5) ** 2 != n))
def test_recognize_quadratic_surd(n):
    ctx = make_context(60)
    cand = recognize_algebraic(ctx.mp.sqrt(n), 4, ctx)
    assert cand is not None and cand.coeffs == (-n, 0, 1)


@settings(max_examples=10, deadline=None)
@given(st.integers(min_value=2, max_value=30))
def test_singular_modulus_monotone(r):
    assert singular_modulus(r + 1, CTX) < singular_modulus(r, CTX)


@settings(max_examples=10, deadline=None)
@given(st.lists(st.integers(min_value=-9, max_value=9), min_size=3, max_size=4).filter(
    lambda c: c[-1] != 0))
def test_recognized_polynomial_vanishes(coeffs):
    ctx = make_context(80)
    roots = [r for r in ctx.mp.polyroots(coeffs[::-1], maxsteps=200, extraprec=200)
             if abs(ctx.mp.im(r)) < 1e-30]
    if not roots:
        return
    x = ctx.mp.re(roots[0])
    cand = recognize_algebraic(x, 3, ctx)
    assert cand is not None
    assert abs(poly_eval(cand.coeffs, x, ctx)) < ctx.mp.mpf(10) ** -60
