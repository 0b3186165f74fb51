from fractions import Fraction

import pytest

from rpf import make_context, pi_const
from rpf.elliptic import (
    alpha,
    dK_dk,
    elliptic_data,
    elliptic_E,
    elliptic_K,
    generalized_alpha,
    generalized_data,
    generalized_KE,
    hyper_pFq,
    modulus_pair,
    nome,
    singular_modulus,
    theta23,
)
from rpf.errors import ConvergenceError, DomainError

HALF = Fraction(1, 2)


def quadrature(f, a, b, mp, tol):
    """Midpoint rule refined by doubling until successive values agree (oracle only)."""
    n = 8
    prev = None
    while True:
        h = (b - a) / n
        val = h * mp.fsum(f(a + (i + mp.mpf(1) / 2) * h) for i in range(n))
        if prev is not None and abs(val - prev) < tol:
            return val
        prev, n = val, 2 * n


def K_quad(k, mp, tol):
    return quadrature(lambda t: 1 / mp.sqrt(1 - (k * mp.sin(t)) ** 2), 0, mp.pi / 2, mp, tol)


def E_quad(k, mp, tol):
    return quadrature(lambda t: mp.sqrt(1 - (k * mp.sin(t)) ** 2), 0, mp.pi / 2, mp, tol)


@pytest.fixture(scope="module")
def ctx():
    return make_context(40)


# -- hypergeometric --------------------------------------------------------


def test_hyper_unit_term(ctx):
    assert hyper_pFq([HALF, HALF], [1], 0, ctx) == 1


def test_hyper_gauss_K(ctx):
    mp = ctx.mp
    v = hyper_pFq([HALF, HALF], [1], HALF, ctx)
    assert abs(v - 2 / pi_const(ctx) * elliptic_K(1 / mp.sqrt(2), ctx)) < mp.mpf(10) ** -45
    assert abs(v - mp.mpf("1.18034059901609622604533794056")) < mp.mpf(10) ** -29


def test_hyper_clausen_square(ctx):
    mp = ctx.mp
    w = mp.mpf("0.1")
    v = hyper_pFq([HALF] * 3, [1, 1], 4 * w * (1 - w), ctx)
    assert abs(v - 4 / pi_const(ctx) ** 2 * elliptic_K(mp.sqrt(w), ctx) ** 2) < mp.mpf(10) ** -45


@pytest.mark.parametrize("z", ["0.1", "0.3", "0.5"])
def test_clausen_identity_sqrt_reading(ctx, z):
    mp = ctx.mp
    z = mp.mpf(z)
    w = (1 - mp.sqrt(1 - z)) / 2
    lhs = hyper_pFq([HALF] * 3, [1, 1], z, ctx)
    assert abs(lhs - 4 * elliptic_K(mp.sqrt(w), ctx) ** 2 / pi_const(ctx) ** 2) < mp.mpf(10) ** -(ctx.digits - 5)


def test_hyper_matches_mpmath(ctx):
    mp = ctx.mp
    v = hyper_pFq([Fraction(1, 6), Fraction(5, 6), HALF], [1, 1], "0.37", ctx)
    assert abs(v - mp.hyp3f2(mp.mpf(1) / 6, mp.mpf(5) / 6, 0.5, 1, 1, mp.mpf("0.37"))) < mp.mpf(10) ** -45


def test_hyper_negative_argument(ctx):
    mp = ctx.mp
    v = hyper_pFq([HALF, HALF], [1], "-0.8", ctx)
    assert abs(v - mp.hyp2f1(0.5, 0.5, 1, mp.mpf("-0.8"))) < mp.mpf(10) ** -45


def test_hyper_errors(ctx):
    with pytest.raises(DomainError):
        hyper_pFq([HALF], [1], 1, ctx)
    with pytest.raises(DomainError):
        hyper_pFq([HALF], [0], "0.5", ctx)
    with pytest.raises(DomainError):
        hyper_pFq([HALF], [-2], "0.5", ctx)
    with pytest.raises(ConvergenceError):
        hyper_pFq([HALF, HALF], [1], "0.999", ctx, max_terms=50)


# -- K and E ---------------------------------------------------------------


def test_K_zero(ctx):
    assert elliptic_K(0, ctx) == pi_const(ctx) / 2


@pytest.mark.parametrize("k, prefix", [
    ("1/sqrt2", "1.85407467730137191843385034720"),
    ("0.5", "1.68575035481259604287120365780"),
    ("0.9", None),
    ("0.1", None),
])
def test_K_against_quadrature(ctx, k, prefix):
    mp = ctx.mp
    x = 1 / mp.sqrt(2) if k == "1/sqrt2" else mp.mpf(k)
    got = elliptic_K(x, ctx)
    assert abs(got - K_quad(x, mp, mp.mpf(10) ** -45)) < mp.mpf(10) ** -40
    if prefix:
        assert abs(got - mp.mpf(prefix)) < mp.mpf(10) ** -29


def test_E_endpoints(ctx):
    assert elliptic_E(0, ctx) == pi_const(ctx) / 2
    assert elliptic_E(1, ctx) == 1


@pytest.mark.parametrize("k", ["1/sqrt2", "0.3", "0.95"])
def test_E_against_quadrature(ctx, k):
    mp = ctx.mp
    x = 1 / mp.sqrt(2) if k == "1/sqrt2" else mp.mpf(k)
    assert abs(elliptic_E(x, ctx) - E_quad(x, mp, mp.mpf(10) ** -45)) < mp.mpf(10) ** -40


def test_E_at_inverse_sqrt2(ctx):
    # three independent routes; the last 12 digits of the commonly quoted
    # 1.35064388104767550386... are not reproduced by any of them
    mp = ctx.mp
    x = 1 / mp.sqrt(2)
    v = elliptic_E(x, ctx)
    assert abs(v - mp.ellipe(mp.mpf(1) / 2)) < mp.mpf(10) ** -45
    assert mp.nstr(v, 36).startswith("1.35064388104767550252017473533872584")


def test_K_E_domain(ctx):
    for bad in (-0.1, 1.0, 1.5):
        with pytest.raises(DomainError):
            elliptic_K(bad, ctx)
    with pytest.raises(DomainError):
        elliptic_E(1.01, ctx)


def test_legendre_relation(ctx100):
    mp = ctx100.mp
    for i in range(1, 10):
        k = mp.mpf(i) / 10
        kp = mp.sqrt(1 - k * k)
        K, Kp = elliptic_K(k, ctx100), elliptic_K(kp, ctx100)
        lhs = elliptic_E(k, ctx100) * Kp + elliptic_E(kp, ctx100) * K - K * Kp
        assert abs(lhs - pi_const(ctx100) / 2) < mp.mpf(10) ** -(ctx100.digits - 5)


# -- dK/dk -------------------------------------------------------------------


@pytest.mark.parametrize("x", ["0.2", "0.5", "0.8", "1/sqrt2"])
def test_dK_dk_finite_difference(ctx, x):
    mp = ctx.mp
    x = 1 / mp.sqrt(2) if x == "1/sqrt2" else mp.mpf(x)
    h = mp.mpf(10) ** -(ctx.digits // 3)
    fd = (elliptic_K(x + h, ctx) - elliptic_K(x - h, ctx)) / (2 * h)
    d = dK_dk(x, ctx)
    assert abs(fd - d) / abs(d) < mp.mpf(10) ** -(ctx.digits // 3)


def test_dK_dk_near_zero(ctx):
    # K ~ (pi/2)(1 + x^2/4 + 9x^4/64) gives dK/dk ~ (pi/4) x (1 + 9x^2/8)
    mp = ctx.mp
    x = mp.mpf(10) ** -5
    d = dK_dk(x, ctx)
    approx = pi_const(ctx) / 4 * x
    assert abs(d / approx - 1) < mp.mpf(10) ** -9


def test_dK_dk_endpoints(ctx):
    for bad in (0, 1):
        with pytest.raises(DomainError):
            dK_dk(bad, ctx)


# -- nome, theta, singular moduli ------------------------------------------


def test_nome(ctx):
    mp = ctx.mp
    assert mp.nstr(nome(1, ctx), 30).startswith("0.0432139182637722497744177371895"[:30])
    assert abs(nome(4, ctx) - nome(1, ctx) ** 2) < mp.mpf(10) ** -(ctx.dps - 3)
    assert mp.nstr(nome(163, ctx), 4) == "3.809e-18"
    with pytest.raises(DomainError):
        nome(0, ctx)


def test_theta_small_q(ctx):
    mp = ctx.mp
    _, t3 = theta23(mp.mpf(10) ** -50, ctx)
    assert t3 == 1 + 2 * mp.mpf(10) ** -50
    with pytest.raises(DomainError):
        theta23(1, ctx)


@pytest.mark.parametrize("r, expected", [(1, "1/sqrt(2)"), (4, "3-2*sqrt(2)"), (2, "sqrt(2)-1")])
def test_theta_quotient(ctx, r, expected):
    mp = ctx.mp
    t2, t3 = theta23(nome(r, ctx), ctx)
    want = mp.mpf(eval(expected, {"sqrt": mp.sqrt}))
    assert abs((t2 / t3) ** 2 - want) < mp.mpf(10) ** -(ctx.digits - 2)


def test_singular_modulus_r58(ctx100):
    mp = ctx100.mp
    want = (mp.sqrt(2) - 1) ** 6 * (-99 + 13 * mp.sqrt(58))
    assert abs(singular_modulus(58, ctx100) - want) < mp.mpf(10) ** -95 * want


@pytest.mark.parametrize("r", [1, 2, 3, 4, 5, 8, 18, 27, 58, Fraction(1, 2), Fraction(7, 3)])
def test_modulus_invariants(ctx100, r):
    mp = ctx100.mp
    k, kp = modulus_pair(r, ctx100)
    assert abs(k * k + kp * kp - 1) < mp.mpf(10) ** -(ctx100.digits - 5)
    ratio = elliptic_K(kp, ctx100) / elliptic_K(k, ctx100)
    assert abs(ratio - mp.sqrt(mp.mpf(Fraction(r).numerator) / Fraction(r).denominator)) < mp.mpf(10) ** -(ctx100.digits - 5)
    half = 1 / mp.sqrt(2)
    if r > 1:
        assert 0 < k < half
    elif r < 1:
        assert half < k < 1
    else:
        assert abs(k - half) < mp.mpf(10) ** -(ctx100.digits - 2)


def test_singular_modulus_domain(ctx):
    with pytest.raises(DomainError):
        singular_modulus(0, ctx)
    with pytest.raises(DomainError):
        singular_modulus(-3, ctx)


# -- elliptic alpha --------------------------------------------------------


def test_alpha_values(ctx100):
    mp = ctx100.mp
    tol = mp.mpf(10) ** -90
    assert abs(alpha(1, ctx100) - mp.mpf(1) / 2) < tol
    assert abs(alpha(27, ctx100) - 3 * ((mp.sqrt(3) + 1) / 2 - mp.cbrt(2))) < tol
    a18 = -3057 + 2163 * mp.sqrt(2) + 1764 * mp.sqrt(3) - 1248 * mp.sqrt(6)
    assert abs(alpha(18, ctx100) - a18) < tol
    assert abs(alpha(4, ctx100) - 2 * (mp.sqrt(2) - 1) ** 2) < tol


def test_elliptic_data(ctx):
    d = elliptic_data(2, ctx)
    mp = ctx.mp
    assert d.r == 2 and d.digits == ctx.digits
    assert abs(d.bigK - elliptic_K(d.k, ctx)) < mp.mpf(10) ** -35
    assert abs(d.bigE - elliptic_E(d.k, ctx)) < mp.mpf(10) ** -35
    assert abs(d.alpha - alpha(2, ctx)) < mp.mpf(10) ** -35


# -- generalized signature integrals ---------------------------------------


@pytest.mark.parametrize("x", ["0.2", "0.6", "0.9"])
def test_generalized_s0_reduction(ctx, x):
    mp = ctx.mp
    Ks, Es = generalized_KE(0, x, ctx)
    assert abs(Ks - elliptic_K(mp.mpf(x), ctx)) < mp.mpf(10) ** -(ctx.digits - 2)
    assert abs(Es - elliptic_E(mp.mpf(x), ctx)) < mp.mpf(10) ** -(ctx.digits - 2)


def test_generalized_at_zero(ctx):
    Ks, Es = generalized_KE(Fraction(1, 3), 0, ctx)
    assert Ks == Es == pi_const(ctx) / 2


def test_generalized_resummation(ctx):
    big = make_context(2 * ctx.digits)
    mp = big.mp
    s = mp.mpf(1) / 6
    Ks, Es = generalized_KE(Fraction(1, 6), HALF, ctx)
    assert abs(Ks - mp.pi / 2 * mp.hyp2f1(0.5 - s, 0.5 + s, 1, 0.25)) < mp.mpf(10) ** -45
    assert abs(Es - mp.pi / 2 * mp.hyp2f1(-0.5 - s, 0.5 + s, 1, 0.25)) < mp.mpf(10) ** -45


def test_generalized_alpha_s0(ctx):
    mp = ctx.mp
    k1 = 1 / mp.sqrt(2)
    assert abs(generalized_alpha(0, k1, 1, ctx) - mp.mpf(1) / 2) < mp.mpf(10) ** -45
    # the single-power reading does not reduce to the classical alpha function
    assert abs(generalized_alpha(0, k1, 1, ctx, power=1) - mp.mpf(1) / 2) > mp.mpf("0.01")


def test_generalized_data(ctx):
    d = generalized_data(Fraction(1, 4), "0.3", 2, ctx)
    assert d.s == Fraction(1, 4)
    assert d.alphas == generalized_alpha(Fraction(1, 4), "0.3", 2, ctx)


def test_generalized_errors(ctx):
    with pytest.raises(DomainError):
        generalized_KE(Fraction(1, 5), "0.3", ctx)
    with pytest.raises(DomainError):
        generalized_alpha(0, "0.3", 1, ctx, power=3)
    with pytest.raises(DomainError):
        generalized_KE(0, 1, ctx)
