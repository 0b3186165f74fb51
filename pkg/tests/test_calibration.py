from fractions import Fraction

import pytest

from rpf import calibration, elliptic, make_context, series
from rpf.errors import DomainError


@pytest.fixture(scope="module")
def ctx():
    return make_context(60)


def test_alpha_power_unique(ctx):
    res = calibration.calibrate_alpha_power(ctx)
    assert res.resolved
    assert [str(p) for p in res.passing] == ["2"] == [str(elliptic.ALPHA_S_POWER)]
    bad = res.residuals[1]
    assert bad > 1e-3


def test_base3_exponent_unique(ctx):
    res = calibration.calibrate_base3_exponent(ctx)
    assert res.resolved
    assert tuple(res.passing) == (Fraction(1, 2),) and series.BASE3_ROOT_EXPONENT == Fraction(1, 2)


def test_b_convention_unique(ctx):
    res = calibration.calibrate_b_convention(ctx)
    assert res.resolved and tuple(res.passing) == ("j",) and series.B_INDEX_CONVENTION == "j"
    assert calibration.b_convention_residual("j", "0.3", ctx) < ctx.mp.mpf(10) ** -50


def test_unknown_b_convention(ctx):
    with pytest.raises(DomainError):
        calibration.b_convention_residual("x", "0.3", ctx)


def test_metadata_records_choices(ctx):
    for family in series.FAMILIES:
        meta = series.derive_formula(family, 3, ctx).metadata
        assert meta == {"alpha_s_power": 2, "base3_root_exponent": "1/2", "b_index_convention": "j"}


def test_alternative_readings_fail_verification(ctx):
    spec = series.derive_formula("base5", 2, ctx, alpha_power=1)
    assert spec.metadata["alpha_s_power"] == 1
    assert not series.verify_formula(spec, 50, ctx).passed
    spec = series.derive_formula("base3", 2, ctx, base3_exponent="1/3")
    assert spec.metadata["base3_root_exponent"] == "1/3"
    assert not series.verify_formula(spec, 50, ctx).passed


def test_run_all_json():
    docs = [r.to_json() for r in calibration.run_all(60)]
    assert [d["name"] for d in docs] == ["alpha_s_power", "base3_root_exponent", "b_index_convention"]
    assert all(d["resolved"] for d in docs)
