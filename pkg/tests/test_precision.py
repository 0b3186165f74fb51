from fractions import Fraction

import mpmath
import pytest

from rpf import BigReal, make_context, pi_const
from rpf.errors import DomainError, PrecisionError
from rpf.precision import (
    agm,
    format_decimal,
    format_scientific,
    from_fixed,
    parse_decimal,
    parse_rational,
    significant_digits,
    to_fixed,
)

PI_60 = "3.14159265358979323846264338327950288419716939937510582097494"


@pytest.mark.parametrize("digits, guard", [(10, 20), (100, 20), (250, 25), (1500, 150)])
def test_guard_policy(digits, guard):
    ctx = make_context(digits)
    assert (ctx.digits, ctx.guard) == (digits, guard)
    assert ctx.dps == digits + guard


def test_rejects_low_digits():
    with pytest.raises(PrecisionError):
        make_context(5)


def test_guard_env_override(monkeypatch):
    monkeypatch.setenv("RPF_GUARD_DIGITS", "40")
    assert make_context(100).guard == 40
    monkeypatch.setenv("RPF_GUARD_DIGITS", "3")
    with pytest.raises(PrecisionError):
        make_context(100)
    monkeypatch.setenv("RPF_GUARD_DIGITS", "many")
    with pytest.raises(PrecisionError):
        make_context(100)


def test_contexts_are_isolated():
    before = mpmath.mp.dps
    a, b = make_context(30), make_context(300)
    assert a.mp.dps == 50 and b.mp.dps == 330
    assert mpmath.mp.dps == before


@pytest.mark.parametrize("digits, text", [(10, "3.141592654"), (30, "3.14159265358979323846264338328")])
def test_pi_known_digits(digits, text):
    ctx = make_context(digits)
    assert format_decimal(pi_const(ctx), digits) == text


def test_pi_against_backend_constant():
    # Gauss-Legendre route vs mpmath's own constant
    ctx = make_context(1000)
    mp = ctx.mp
    assert abs(pi_const(ctx) - mp.pi) < mp.mpf(10) ** -(ctx.dps - 2)
    assert format_decimal(pi_const(make_context(60)), 70).startswith(PI_60)


def test_agm_examples(ctx50):
    mp = ctx50.mp
    assert agm(1, 1, ctx50) == 1
    assert format_decimal(agm(1, 2, ctx50), 40).startswith("1.45679103104690686918643238326")
    v = agm(1, 1 / mp.sqrt(2), ctx50)
    assert abs(pi_const(ctx50) / (2 * v) - mp.ellipk(mp.mpf(1) / 2)) < mp.mpf(10) ** -55


def test_agm_domain(ctx50):
    with pytest.raises(DomainError):
        agm(0, 1, ctx50)
    with pytest.raises(DomainError):
        agm(-1, 1, ctx50)


def test_fixed_point_round_trip(ctx50):
    mp = ctx50.mp
    x = mp.sqrt(2)
    bits = ctx50.bits
    assert abs(from_fixed(to_fixed(x, bits), bits, ctx50) - x) <= mp.mpf(2) ** -(bits - 1)


def test_parse_rational():
    assert parse_rational("58") == 58
    assert parse_rational("5/2") == Fraction(5, 2)
    assert parse_rational("0.25") == Fraction(1, 4)
    assert parse_rational(3) == 3
    with pytest.raises(DomainError):
        parse_rational("abc")
    with pytest.raises(DomainError):
        parse_rational("1/0")


def test_decimal_formats(ctx50):
    assert parse_decimal("6.1e-17", ctx50) == ctx50.mp.mpf("6.1e-17")
    assert parse_decimal("-.5", ctx50) == -0.5
    with pytest.raises(DomainError):
        parse_decimal("1.2.3", ctx50)
    with pytest.raises(DomainError):
        parse_decimal("0x10", ctx50)
    assert significant_digits("0.00120") == 3
    assert significant_digits("-12.5e7") == 3
    assert format_decimal(0, 10) == "0.0"
    assert format_decimal(ctx50.mp.mpf(10) ** -20, 3) == "0.0000000000000000000100"
    assert format_scientific(ctx50.mp.mpf("1.234567e-80"), 3) == "1.23e-80"


def test_bigreal_round_trip():
    text = "1.4142135623730950488016887242096980785696718753769"
    x = BigReal.parse(text)
    assert x.digits == 50
    assert str(x) == text
    assert BigReal.parse(str(x)) == x
    assert x.to_json() == {"value": text, "digits": 50}
    assert abs(float(x) - 2**0.5) < 1e-15


def test_reported_value_carries_digits(ctx50):
    r = ctx50.reported(ctx50.mp.mpf(1) / 3)
    assert r.digits == 50
    assert str(r) == "0." + "3" * 50
