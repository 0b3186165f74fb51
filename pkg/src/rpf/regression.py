"""Built-in table of published closed forms, minimal polynomials and series.

Each entry pairs a printed expression (evaluated with plain mpmath surd
arithmetic) with the quantity computed by the engine, so agreement is a
two-route check.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .elliptic import _alpha, _modulus_pair
from .modular import _beta, _j_modulus, J_T_pair, alpha3, sigma_r, weber_G
from .precision import PrecisionContext, _mp_for
from .series import HALF_UPPER, SEXTIC_UPPER, derive_formula, make_spec


# -- engine-side quantities ------------------------------------------------


def quantity(name: str, r, ctx: PrecisionContext):
    """Evaluate a named per-r quantity by the engine's own routes."""
    r = Fraction(r)
    if name == "J":
        return J_T_pair(r, ctx)[0]
    if name == "T":
        return J_T_pair(r, ctx)[1]
    if name == "1-T":
        return 1 - J_T_pair(r, ctx)[1]
    if name == "k":
        return _modulus_pair(r, ctx)[0]
    if name == "k2":
        return _modulus_pair(r, ctx)[0] ** 2
    if name == "kk2":
        k, kp = _modulus_pair(r, ctx)
        return (k * kp) ** 2
    if name == "alpha":
        return _alpha(r, ctx)[0]
    if name == "beta":
        return _beta(r, ctx)
    if name == "alpha3":
        return alpha3(r, ctx)
    if name == "G":
        return weber_G(r, ctx)
    if name == "sigma":
        return sigma_r(r, ctx)
    if name == "1/(beta(1-beta))":
        b = _beta(r, ctx)
        return 1 / (b * (1 - b))
    if name == "j":
        return _j_modulus(r, ctx)
    if name in ("thm23_b", "thm23_b-1", "thm23_c", "thm23_A"):
        spec = derive_formula("thm23", r, ctx)
        if name == "thm23_A":
            return spec.rhs_factor
        if name == "thm23_c":
            return spec.parameters["c"]
        b = spec.parameters["b"]
        return b if name == "thm23_b" else b - 1
    raise KeyError(name)


@dataclass(frozen=True)
class PrintedValue:
    """A closed form printed for ``quantity`` at ``r``."""

    label: str
    r: int
    quantity: str
    expr: object  # callable(mp) -> mpf
    min_dps: int = 0  # working digits the printed surd needs (cancellation)


@dataclass(frozen=True)
class PrintedPolynomial:
    label: str
    r: int
    quantity: str
    coeffs: tuple  # ascending


def _J5(mp):
    return 27 * (-1975 + 884 * mp.sqrt(5)) / mp.mpf(33275)


def _T5(mp):
    return (139 + 45 * mp.sqrt(5)) / mp.mpf(418)


def _T163(mp):
    A2 = 3802386862487392962897493239274992371253057854289262
    B2 = 3865464212119923579732688315287754932290919450
    s = mp.sqrt(489)
    return 5 * (12948195754365757115 + 8 * mp.cbrt(A2 - B2 * s) + 8 * mp.cbrt(A2 + B2 * s)) / mp.mpf(
        83470787671093501833
    )


def _J163(mp):
    A1 = 12737965652562547164590026038483234248161827096523072256574968383
    B1 = 229038073182066825378006485964950394558349727761749294205546402325349
    C1 = 8808429913332498766352891
    C2 = 902206261147132595923169636910570558029813352485594880
    u = mp.cbrt(-A1 + mp.sqrt(489) * B1)
    return 4 * (C1 - C2 / u + 30591288 * u) / mp.mpf(10792555251621895860488211571345343375)


def _J253(mp):
    A1 = 2804365789259959094417576921792857440357087269234369
    A2 = 845548099807651569627713349319558464492321957799872
    A3 = int("14334626424019721997733410517481729654402717977139516818782945906676740858207407330990565")
    A4 = int("4322052487126125954073317286237053746613433493632282233926553935879770457716659641968088")
    A5 = 1066755353338783886372226117351012749877681799897625
    s = mp.sqrt(11)
    return (A1 - A2 * s + 31990140 * mp.sqrt(A3 - A4 * s)) / A5


def _T253(mp):
    B1 = 213216899528167866600672118125
    B2 = 60533150139616794053500831192
    s = mp.sqrt(11)
    return (1875 * mp.sqrt(B1 - B2 * s) + 3847208393012364625 + 752271279708923520 * s) / mp.mpf(
        6969874104047710086
    )


def _b163_minus_1(mp):
    B1 = 5680848001702137216093843898647314524189
    B2 = 76896989960589381643149203281167
    u = mp.cbrt(B1 - mp.sqrt(489) * B2)
    c2 = mp.cbrt(2)
    d = mp.mpf(151931373056001)
    return 191211325848427 / d - 1010784962625383717350772720 * c2 * c2 / (d * u) - 4 * c2 * u / d


def _c163(mp):
    C1 = 5512985602111283751597893407219881834715037026
    C2 = 101526256966667546381077303112958296550
    C3 = 2756492801055641875798946703609940917357518513
    C4 = 50763128483333773190538651556479148275
    s = mp.sqrt(489)
    d = mp.mpf(24764813808128163)
    c4 = mp.cbrt(4)
    return 14178679829869760 / d - 4 * mp.cbrt(C1 - s * C2) / d - (
        6241484569597616793758909818952 * c4 / (d * mp.cbrt(C3 - s * C4))
    )


def _A163(mp):
    A1 = 106866398697613339845357037
    A2 = 3136555671686449089
    s = mp.sqrt(489)
    return 4 * (12660947754667 + 26680 * mp.cbrt(A1 - s * A2) + 26680 * mp.cbrt(A1 + s * A2)) / mp.mpf(
        8254937936042721
    )


def _y163(mp):
    u = mp.cbrt(-1 + 557403 * mp.sqrt(489))
    return mp.mpf(1) / 16 - 266933400 / u + mp.mpf(10005) / 2 * u


def _k27(mp):
    c2 = mp.cbrt(2)
    c4 = c2 * c2
    return mp.sqrt((1 + 100 * c2 - 80 * c4) / (2 + mp.sqrt(3 - 100 * c2 + 80 * c4))) / 2


PRINTED_VALUES = (
    PrintedValue("J_2", 2, "J", lambda mp: mp.mpf(27) / 125),
    PrintedValue("T_2", 2, "T", lambda mp: mp.mpf(5) / 14),
    PrintedValue("J_4", 4, "J", lambda mp: mp.mpf(8) / 1331),
    # the constant 10/21 in the r = 4 series is 1 - T_4
    PrintedValue("1-T_4", 4, "1-T", lambda mp: mp.mpf(10) / 21),
    PrintedValue("J_5", 5, "J", _J5),
    PrintedValue("T_5", 5, "T", _T5),
    PrintedValue("k_8^2", 8, "k2",
                 lambda mp: 113 + 80 * mp.sqrt(2) - 4 * mp.sqrt(2 * (799 + 565 * mp.sqrt(2)))),
    PrintedValue("a(8)", 8, "alpha",
                 lambda mp: 2 * (10 + 7 * mp.sqrt(2)) * (1 - mp.sqrt(-2 + 2 * mp.sqrt(2))) ** 2),
    PrintedValue("k_18", 18, "k", lambda mp: (-7 + 5 * mp.sqrt(2)) * (7 - 4 * mp.sqrt(3))),
    PrintedValue("a(18)", 18, "alpha",
                 lambda mp: -3057 + 2163 * mp.sqrt(2) + 1764 * mp.sqrt(3) - 1248 * mp.sqrt(6)),
    PrintedValue("alpha3_6", 6, "alpha3", lambda mp: (68 - 27 * mp.sqrt(6)) / 500),
    PrintedValue("beta_18", 18, "beta",
                 lambda mp: mp.mpf(1) / 2 - 7 * (49982 + 4077 * mp.sqrt(6))
                 / (10 * mp.sqrt(5) * (989 + 54 * mp.sqrt(6)) ** (mp.mpf(3) / 2))),
    PrintedValue("J_18", 18, "J",
                 lambda mp: (637326171 - 260186472 * mp.sqrt(6)) / mp.mpf(453870144125)),
    PrintedValue("T_18", 18, "T", lambda mp: (712075 + 49230 * mp.sqrt(6)) / mp.mpf(1074514)),
    PrintedValue("1-T_18", 18, "1-T",
                 lambda mp: 9 * (40271 - 5470 * mp.sqrt(6)) / mp.mpf(1074514)),
    PrintedValue("k_27", 27, "k", _k27),
    PrintedValue("a(27)", 27, "alpha", lambda mp: 3 * ((mp.sqrt(3) + 1) / 2 - mp.cbrt(2))),
    PrintedValue("J_27", 27, "J",
                 lambda mp: (56143116 + 157058640 * mp.cbrt(2) - 160025472 * mp.cbrt(4))
                 / mp.mpf(817400375)),
    PrintedValue("T_27", 27, "T",
                 lambda mp: (58871825 + 22512960 * mp.cbrt(2) + 13208820 * mp.cbrt(4))
                 / mp.mpf(132566687)),
    PrintedValue("1-T_27", 27, "1-T",
                 lambda mp: 6 * (12282477 - 3752160 * mp.cbrt(2) - 2201470 * mp.cbrt(4))
                 / mp.mpf(132566687)),
    PrintedValue("k_58", 58, "k", lambda mp: (mp.sqrt(2) - 1) ** 6 * (-99 + 13 * mp.sqrt(58))),
    PrintedValue("a(58)", 58, "alpha",
                 lambda mp: (-70 + 99 * mp.sqrt(2) - 13 * mp.sqrt(29)) * (5 + mp.sqrt(29)) ** 6
                 * (-444 + 99 * mp.sqrt(29)) / 64),
    PrintedValue("J_58", 58, "J",
                 lambda mp: (1399837865393267 - 259943365786104 * mp.sqrt(29))
                 / mp.mpf(39842331943257933453125)),
    PrintedValue("T_58", 58, "T",
                 lambda mp: 5 * (1684967251 + 24160612 * mp.sqrt(29)) / mp.mpf(10376469642)),
    PrintedValue("1-T_58", 58, "1-T",
                 lambda mp: mp.mpf(6117973) / 32528118 - 8628790 / (25557807 * mp.sqrt(29))),
    PrintedValue("G_93", 93, "G",
                 lambda mp: (3 * mp.sqrt(3) + mp.sqrt(31)) ** (mp.mpf(1) / 4)
                 * (39 + 7 * mp.sqrt(31)) ** (mp.mpf(1) / 6) / mp.cbrt(2)),
    PrintedValue("sigma(93)", 93, "sigma",
                 lambda mp: 6 * ((3 * mp.sqrt(3) + mp.sqrt(31)) ** (mp.mpf(1) / 4)
                                 * (39 + 7 * mp.sqrt(31)) ** (mp.mpf(1) / 6) / mp.cbrt(2)) ** -6
                 * ((mp.sqrt(3) + 1) / 2) ** 3
                 * (15 * mp.sqrt(93) + 13 * mp.sqrt(31) + 201 * mp.sqrt(3) + 217)),
    PrintedValue("(k_93 k'_93)^2", 93, "kk2",
                 lambda mp: 1 / (224589314596 + 129666700800 * mp.sqrt(3)
                                 + 40337431680 * mp.sqrt(31) + 23288826960 * mp.sqrt(93))),
    # printed as the reciprocal of J_93; numerically it is 1/(beta(1-beta)) = 4/J_93
    PrintedValue("printed J_93^-1", 93, "1/(beta(1-beta))",
                 lambda mp: 119562334956358303022500 + 21474029280866147440000 * mp.sqrt(31)
                 + 470106000 * mp.sqrt(129368095019778762513344107725
                                       + 23235195778655878514048710848 * mp.sqrt(31)),
                 min_dps=60),
    PrintedValue("T_93", 93, "T",
                 lambda mp: (10559116299575 + 1317692448000 * mp.sqrt(3)
                             + 275805228680 * mp.sqrt(31) - 81807235875 * mp.sqrt(93))
                 / mp.mpf(15081520900138)),
    PrintedValue("J_163", 163, "J", _J163, min_dps=120),
    PrintedValue("T_163", 163, "T", _T163),
    PrintedValue("b(163)-1", 163, "thm23_b-1", _b163_minus_1),
    PrintedValue("c(163)", 163, "thm23_c", _c163),
    PrintedValue("A (r=163)", 163, "thm23_A", _A163),
    PrintedValue("y_163", 163, "kk2", _y163),
    PrintedValue("J_253", 253, "J", _J253, min_dps=200),
    PrintedValue("T_253", 253, "T", _T253),
)


PRINTED_POLYNOMIALS = (
    PrintedPolynomial("J_2", 2, "J", (-27, 125)),
    PrintedPolynomial("T_2", 2, "T", (-5, 14)),
    PrintedPolynomial("J_4", 4, "J", (-8, 1331)),
    PrintedPolynomial(
        "beta_58", 58, "beta",
        (1, -1399837865393267000, 79684665286353732299517000,
         -159369327773031733812500000, 79684663886515866906250000),
    ),
    PrintedPolynomial(
        "J_163", 163, "J",
        (-64, 2552810853189232588558727380998000, -2198253790246041723377943360187500,
         224451422498574115473590775022822688001953125),
    ),
    PrintedPolynomial("y_163", 163, "kk2", (-1, 16408588290048048, -768, 4096)),
    PrintedPolynomial(
        "b(163)", 163, "thm23_b",
        (-5839006481108705728, 9529627071955041072, -4530513053635162884, 668649972819460401),
    ),
    PrintedPolynomial(
        "c(163)", 163, "thm23_c",
        (-24380823840878077184, 13131020889593608594752, -30513780896384581928640,
         17765361127840243394169),
    ),
)


def printed_value(label: str) -> PrintedValue:
    for v in PRINTED_VALUES:
        if v.label == label:
            return v
    raise KeyError(label)


def printed_polynomial(label: str) -> PrintedPolynomial:
    for p in PRINTED_POLYNOMIALS:
        if p.label == label:
            return p
    raise KeyError(label)


def evaluate_printed(entry: PrintedValue, ctx: PrecisionContext):
    """Evaluate a printed surd at ``max(ctx.dps, entry.min_dps) + dps`` working digits."""
    mp = _mp_for(ctx.dps + max(ctx.dps, entry.min_dps))
    return ctx.mp.mpf(entry.expr(mp))


def compare_printed(entry: PrintedValue, ctx: PrecisionContext):
    """Return ``(printed, computed, |difference|)``."""
    printed = evaluate_printed(entry, ctx)
    computed = quantity(entry.quantity, entry.r, ctx)
    return printed, computed, abs(printed - computed)


# -- printed series fixtures ----------------------------------------------


FIXTURE_NAMES = (
    "jseries_r2", "jseries_r4", "jseries_r5", "jseries_r8", "jseries_r18",
    "jseries_r27", "jseries_r58", "thm23_r25", "thm21_r2",
)


def printed_formula(name: str, ctx: PrecisionContext):
    """FormulaSpec built directly from a published series (no derivation)."""
    mp = ctx.mp
    s = mp.sqrt
    cb = mp.cbrt
    if name == "jseries_r2":
        return make_spec("jseries", 2, mp.mpf(27) / 125, (mp.mpf(9) / 14, 6),
                         15 * s(5) / 14, 1, "15*sqrt(5)/(14*pi)", ctx, upper=SEXTIC_UPPER)
    if name == "jseries_r4":
        return make_spec("jseries", 4, mp.mpf(8) / 1331, (mp.mpf(10) / 21, 6),
                         11 * s(mp.mpf(11) / 3) / 14, 1, "11*sqrt(11/3)/(14*pi)", ctx,
                         upper=SEXTIC_UPPER)
    if name == "jseries_r5":
        return make_spec("jseries", 5, (-53325 + 23868 * s(5)) / 33275, (93 - 15 * s(5), 836),
                         s(21650 + 5967 * s(5)), 1, "sqrt(21650+5967*sqrt(5))/pi", ctx,
                         upper=SEXTIC_UPPER)
    if name == "jseries_r8":
        return make_spec("jseries", 8, (5643000 - 3990168 * s(2)) / 1520875,
                         ((3276 - 1125 * s(2)) / 4991, mp.mpf(29946) / 4991),
                         15 * s(mp.mpf(5) / 2 * (84125 + 81432 * s(2))) / 9982, 1,
                         "15*sqrt(5/2*(84125+81432*sqrt(2)))/(9982*pi)", ctx, upper=SEXTIC_UPPER)
    if name == "jseries_r18":
        return make_spec("jseries", 18, (637326171 - 260186472 * s(6)) / 453870144125,
                         (9 * (40271 - 5470 * s(6)) / 1074514, 6),
                         5 * s(23124123365 - 13274820 * s(6)) / 1074514, 1,
                         "5*sqrt(23124123365-13274820*sqrt(6))/(1074514*pi)", ctx,
                         upper=SEXTIC_UPPER)
    if name == "jseries_r27":
        c2, c4 = cb(2), cb(4)
        return make_spec("jseries", 27, (56143116 + 157058640 * c2 - 160025472 * c4) / 817400375,
                         (6 * (12282477 - 3752160 * c2 - 2201470 * c4) / 132566687, 6),
                         935 * s(935 / (3 * (761257259 - 157058640 * c2 + 160025472 * c4))), 1,
                         "935/pi*sqrt(935/(3*(761257259-157058640*2^(1/3)+160025472*4^(1/3))))",
                         ctx, upper=SEXTIC_UPPER)
    if name == "jseries_r58":
        return make_spec("jseries", 58,
                         (1399837865393267 - 259943365786104 * s(29)) / 39842331943257933453125,
                         (mp.mpf(6117973) / 32528118 - 8628790 / (25557807 * s(29)), 6),
                         5 * s(mp.mpf(5) / 87 * (13826969809210107 - 90211316 * s(29))) / 357809298, 1,
                         "5*sqrt(5/87*(13826969809210107-90211316*sqrt(29)))/(357809298*pi)", ctx,
                         upper=SEXTIC_UPPER)
    if name == "thm23_r25":
        return make_spec("thm23", 25, 51841 - 23184 * s(5),
                         (mp.mpf(5) / 12 - 521 / (576 * s(5)), 1 - 521 / (288 * s(5)), 1),
                         1 / (1200 * (161 * s(5) - 360)), 2, "1/(1200*(161*sqrt(5)-360)*pi^2)",
                         ctx, scheme="B3")
    if name == "thm21_r2":
        return make_spec("thm21", 2, 40 * s(2) - 56, (mp.mpf(2) / 7 - 1 / (7 * s(2)), 1),
                         (8 + 5 * s(2)) / 14, 1, "(8+5*sqrt(2))/(14*pi)", ctx, upper=HALF_UPPER)
    raise KeyError(name)

