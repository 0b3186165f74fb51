"""Command-line front end: ``rpf constants | derive | verify | pi | recognize | class-number | selftest``."""

from __future__ import annotations

import argparse
import json
import sys
import time
from fractions import Fraction

from . import __version__, elliptic, modular, series
from .errors import DomainError, PrecisionError, RPFError
from .precision import format_decimal, make_context, parse_rational, pi_const
from .recognize import DIGITS_PER_DEGREE, degree_heuristic, recognize_algebraic, select_root

EXIT_OK = 0
EXIT_DOMAIN = 3
EXIT_PRECISION = 4
EXIT_VERIFY = 5
EXIT_NOT_FOUND = 6

# parameters recognized by ``derive --recognize`` for each family
RECOGNIZED_PARAMS = {
    "thm21": ("z", "alpha"),
    "thm22": ("z", "alpha"),
    "thm23": ("y", "b", "c"),
    "jseries": ("J", "T"),
    "base5": ("beta",),
    "base3": ("alpha3",),
}


def num(x, digits: int) -> dict:
    return {"value": format_decimal(x, digits), "digits": digits}


def _default_degree(r: Fraction, digits: int) -> int:
    """Class-number heuristic, capped by what *digits* can support."""
    deg = degree_heuristic(r.numerator) if r.denominator == 1 else 16
    return max(1, min(deg, digits // DIGITS_PER_DEGREE))


def _recognize_entry(x, max_degree, ctx) -> dict:
    cand = recognize_algebraic(x, max_degree, ctx)
    if cand is None:
        return {"coeffs": None, "status": "not found", "max_degree": max_degree}
    root = select_root(cand.coeffs, x, ctx)
    entry = cand.to_json()
    entry["status"] = "found"
    entry["value"] = num(root, ctx.digits)
    return entry


def constants_report(r, digits: int, recognize_params=False, max_degree=None) -> dict:
    r = parse_rational(r)
    if r < 1:
        raise DomainError(f"constants need r >= 1 (got r={r})")
    ctx = make_context(digits)
    k, kp = elliptic.modulus_pair(r, ctx)
    values = {
        "k": k,
        "kprime": kp,
        "alpha": elliptic.alpha(r, ctx),
        "j": modular.j_invariant(r, "modulus", ctx),
        "beta": modular.beta_r(r, ctx),
        "J": 1728 / modular.j_invariant(r, "modulus", ctx),
        "G": modular.weber_G(r, ctx),
        "sigma": modular.sigma_r(r, ctx),
    }
    if r != 1:
        values["T"] = modular.J_T_pair(r, ctx)[1]
    report = {
        "command": "constants",
        "r": str(r),
        "digits": digits,
        "guard": ctx.guard,
        "constants": {name: num(v, digits) for name, v in values.items()},
    }
    if r == 1:
        report["constants"]["T"] = {"value": None, "digits": digits, "note": "singular at r = 1"}
    if recognize_params:
        deg = max_degree or _default_degree(r, digits)
        report["max_degree"] = deg
        report["recognized"] = {name: _recognize_entry(v, deg, ctx) for name, v in values.items()}
    return report


def _family_param(spec, name):
    if name == "z":
        return spec.z
    return spec.parameters[name]


def derive_report(family: str, r, digits: int, recognize_params=False, max_degree=None) -> dict:
    r = parse_rational(r)
    ctx = make_context(digits)
    spec = series.derive_formula(family, r, ctx)
    vd = min(digits, 100)
    vctx = make_context(vd + 10)
    verification = series.verify_formula(series.derive_formula(family, r, vctx), vd, vctx)
    mult = {"linA": num(spec.lin_a, digits), "linB": num(spec.lin_b, digits)}
    if spec.scheme == "B3":
        mult["midB"] = num(spec.mid_b, digits)
    report = {
        "command": "derive",
        "family": family,
        "r": str(r),
        "digits": digits,
        "guard": ctx.guard,
        "scheme": spec.scheme,
        "z": num(spec.z, digits),
        "multiplier": mult,
        "parameters": {k: num(v, digits) for k, v in sorted(spec.parameters.items())},
        "rhsDescription": spec.rhs_description,
        "rhs": num(spec.rhs, digits),
        "digitsPerTerm": round(spec.digits_per_term, 6),
        "verification": verification.to_json(),
        "calibration": dict(spec.metadata),
    }
    if recognize_params:
        deg = max_degree or _default_degree(r, digits)
        report["max_degree"] = deg
        report["recognized"] = {
            name: _recognize_entry(_family_param(spec, name), deg, ctx) for name in RECOGNIZED_PARAMS[family]
        }
    return report


def verify_report(family, r, digits):
    ctx = make_context(digits + 10)
    spec = series.derive_formula(family, r, ctx)
    rep = series.verify_formula(spec, digits, ctx)
    return {
        "command": "verify",
        "family": family,
        "r": str(parse_rational(r)),
        "digits": digits,
        "rhsDescription": spec.rhs_description,
        "digitsPerTerm": round(spec.digits_per_term, 6),
        "verification": rep.to_json(),
    }


def pi_report(family, r, digits):
    t0 = time.perf_counter()
    ctx = make_context(digits + 10)
    spec = series.derive_formula(family, r, ctx)
    est, n = series.pi_from_formula(spec, digits, ctx)
    elapsed = time.perf_counter() - t0
    err = abs(est - pi_const(ctx))
    correct = int(-ctx.mp.log10(err)) if err else ctx.dps
    return {
        "command": "pi",
        "family": family,
        "r": str(parse_rational(r)),
        "digits": digits,
        "pi": num(est, digits),
        "terms_used": n,
        "correct_digits": min(correct, ctx.dps),
        "wall_time_s": round(elapsed, 4),
    }


def recognize_report(value: str, max_degree: int, digits: int):
    ctx = make_context(digits)
    report = {"command": "recognize", "max_degree": max_degree, "digits": digits, "input": value.strip()}
    report["result"] = _recognize_entry(value, max_degree, ctx)
    return report


def class_number_report(d: int):
    return {"command": "class-number", "d": d, "h": modular.class_number(d),
            "suggested_max_degree": degree_heuristic(d)}


# -- text rendering --------------------------------------------------------


def _render_value(name, v, indent="  "):
    if isinstance(v, dict) and "value" in v and "digits" in v:
        val = v["value"] if v["value"] is not None else "undefined"
        note = f"  ({v['note']})" if "note" in v else ""
        return f"{indent}{name} = {val}  [{v['digits']} digits]{note}"
    return f"{indent}{name} = {v}"


def render_text(report: dict) -> str:
    lines = []
    cmd = report.get("command")
    head = [f"{k}={report[k]}" for k in ("family", "r", "d", "digits") if k in report]
    lines.append(f"{cmd}: " + " ".join(head))
    for key in ("constants", "multiplier", "parameters"):
        if key in report:
            lines.append(f"{key}:")
            lines.extend(_render_value(k, v) for k, v in report[key].items())
    for key in ("z", "rhs", "pi"):
        if key in report:
            lines.append(_render_value(key, report[key], ""))
    for key in ("rhsDescription", "digitsPerTerm", "terms_used", "correct_digits", "wall_time_s", "h",
                "suggested_max_degree"):
        if key in report:
            lines.append(f"{key}: {report[key]}")
    if "verification" in report:
        v = report["verification"]
        lines.append(
            f"verification: {'passed' if v['passed'] else 'FAILED'} at {v['digits']} digits, "
            f"{v['terms_used']} terms, |error| {v['abs_error']}, measured {v['measured_digits_per_term']} digits/term"
        )
    if "calibration" in report:
        lines.append("calibration: " + ", ".join(f"{k}={v}" for k, v in sorted(report["calibration"].items())))
    recog = report.get("recognized") or ({"value": report["result"]} if "result" in report else {})
    for name, entry in recog.items():
        if entry.get("coeffs") is None:
            lines.append(f"recognized {name}: not found up to degree {entry.get('max_degree')}")
        else:
            lines.append(f"recognized {name}: {entry['polynomial']} = 0  (degree {entry['degree']}, "
                         f"residual {entry['residual']})")
    if "checks" in report:
        lines.extend(c["line"] for c in report["checks"])
        lines.append("selftest: " + ("passed" if report["passed"] else "FAILED"))
    return "\n".join(lines)


# -- argument parsing ------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit a key-sorted JSON document")
    common.add_argument("--out", metavar="PATH", help="also write the report to PATH")

    p = argparse.ArgumentParser(prog="rpf", description="Derive and verify 1/pi series from singular moduli")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("constants", parents=[common], help="singular values and modular constants at r")
    c.add_argument("--r", required=True)
    c.add_argument("--digits", type=int, required=True)
    c.add_argument("--recognize", action="store_true")
    c.add_argument("--max-degree", type=int)

    d = sub.add_parser("derive", parents=[common], help="instantiate a series family at r")
    d.add_argument("--family", required=True, choices=series.FAMILIES)
    d.add_argument("--r", required=True)
    d.add_argument("--digits", type=int, required=True)
    d.add_argument("--recognize", action="store_true")
    d.add_argument("--max-degree", type=int)

    v = sub.add_parser("verify", parents=[common], help="sum a derived series and compare with its rhs")
    v.add_argument("--family", required=True, choices=series.FAMILIES)
    v.add_argument("--r", required=True)
    v.add_argument("--digits", type=int, required=True)

    q = sub.add_parser("pi", parents=[common], help="compute pi from a derived series")
    q.add_argument("--family", required=True, choices=series.FAMILIES)
    q.add_argument("--r", required=True)
    q.add_argument("--digits", type=int, required=True)

    g = sub.add_parser("recognize", parents=[common], help="find an integer polynomial for a decimal")
    g.add_argument("--value", required=True)
    g.add_argument("--max-degree", type=int, required=True)
    g.add_argument("--digits", type=int, required=True)

    h = sub.add_parser("class-number", parents=[common], help="class number h(-d)")
    h.add_argument("--d", type=int, required=True)

    s = sub.add_parser("selftest", parents=[common], help="run the built-in acceptance checks")
    s.add_argument("--quick", action="store_true", help="skip the 1500-digit checks")
    return p


def _dispatch(args):
    """Return ``(report, exit_code)``."""
    if args.command == "constants":
        rep = constants_report(args.r, args.digits, args.recognize, args.max_degree)
        return rep, EXIT_OK
    if args.command == "derive":
        rep = derive_report(args.family, args.r, args.digits, args.recognize, args.max_degree)
        return rep, EXIT_OK if rep["verification"]["passed"] else EXIT_VERIFY
    if args.command == "verify":
        rep = verify_report(args.family, args.r, args.digits)
        return rep, EXIT_OK if rep["verification"]["passed"] else EXIT_VERIFY
    if args.command == "pi":
        rep = pi_report(args.family, args.r, args.digits)
        return rep, EXIT_OK if rep["correct_digits"] >= args.digits - 5 else EXIT_VERIFY
    if args.command == "recognize":
        rep = recognize_report(args.value, args.max_degree, args.digits)
        return rep, EXIT_OK if rep["result"]["coeffs"] is not None else EXIT_NOT_FOUND
    if args.command == "class-number":
        return class_number_report(args.d), EXIT_OK
    if args.command == "selftest":
        from . import acceptance

        emit = None if args.json else print
        checks = acceptance.run(args.quick, emit=emit)
        ok = acceptance.verdict(checks)
        rep = {
            "command": "selftest",
            "quick": args.quick,
            "passed": ok,
            "checks": [
                {"criterion": c.criterion, "name": c.name, "passed": c.passed, "detail": c.detail,
                 "literal_conflict": c.literal_conflict, "line": c.line()}
                for c in checks
            ],
        }
        return rep, EXIT_OK if ok else EXIT_VERIFY
    raise AssertionError(args.command)  # pragma: no cover


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        report, code = _dispatch(args)
    except PrecisionError as exc:
        print(f"rpf: precision insufficient: {exc} (raise --digits)", file=sys.stderr)
        return EXIT_PRECISION
    except DomainError as exc:
        print(f"rpf: domain error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except RPFError as exc:
        print(f"rpf: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_VERIFY
    if args.json:
        text = json.dumps(report, sort_keys=True, indent=2)
    elif args.command == "selftest":
        text = "selftest: " + ("passed" if report["passed"] else "FAILED")
    else:
        text = render_text(report)
    print(text)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    return code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
