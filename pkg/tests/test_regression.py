import pytest

from rpf import make_context
from rpf import regression as R
from rpf.recognize import poly_eval


@pytest.fixture(scope="module")
def ctx():
    return make_context(200)


@pytest.mark.parametrize("entry", R.PRINTED_VALUES, ids=lambda e: e.label)
def test_printed_values(ctx, entry):
    got, want, diff = R.compare_printed(entry, ctx)
    assert diff < ctx.mp.mpf(10) ** -(ctx.digits - 15) * max(1, abs(want))


@pytest.mark.parametrize("poly", R.PRINTED_POLYNOMIALS, ids=lambda p: p.label)
def test_printed_polynomials_vanish(ctx, poly):
    x = R.quantity(poly.quantity, poly.r, ctx)
    scale = max(abs(c) for c in poly.coeffs)
    assert abs(poly_eval(poly.coeffs, x, ctx)) < ctx.mp.mpf(10) ** -(ctx.digits - 20) * scale


def test_lookup_errors():
    with pytest.raises(KeyError):
        R.printed_value("nothing")
    with pytest.raises(KeyError):
        R.printed_polynomial("nothing")
    with pytest.raises(KeyError):
        R.printed_formula("nothing", make_context(20))
