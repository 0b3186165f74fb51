"""Compare the compiled and pure-Python fixed-point kernels.

Usage: python benchmarks/bench_kernels.py [--digits N] [--repeat N]

Each kernel runs on identical inputs in every available backend; the
script checks the outputs agree and prints the best wall time of each.
"""

import argparse
import math
import timeit

from rpf import make_context, modular
from rpf.elliptic import nome
from rpf.kernels import backends
from rpf.precision import to_fixed


def workloads(digits: int) -> dict:
    ctx = make_context(digits)
    bits = ctx.bits
    tol = max(to_fixed(ctx.eps(), bits), 1)
    J, _ = modular.J_T_pair(58, ctx)
    zfix = to_fixed(J, bits)
    qfix = to_fixed(nome(2, ctx), bits)
    upper = ((1, 6), (5, 6), (1, 2))
    lower = ((1, 1), (1, 1))

    x = ctx.mp.sqrt(2) + ctx.mp.sqrt(3)
    d, scale = 4, ctx.mp.mpf(10) ** min(digits, 120)
    basis = []
    for i in range(d + 1):
        row = [0] * (d + 1)
        row[i] = 1
        row.append(int(ctx.mp.nint(scale * x**i)))
        basis.append(row)

    return {
        "hyper_series": lambda k: k.hyper_series(zfix, bits, upper, lower, tol, 10**6),
        "theta_sums": lambda k: k.theta_sums(qfix, bits, tol),
        "lambert_sums": lambda k: k.lambert_sums(qfix, bits, tol),
        "euler_product": lambda k: k.euler_product(qfix, bits, tol),
        "lll_reduce": lambda k: k.lll_reduce([row[:] for row in basis]),
    }


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--digits", type=int, default=2000)
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args(argv)

    found = backends()
    names = sorted(found)
    print(f"digits={args.digits} backends={','.join(names)}")
    print(f"{'kernel':<15}" + "".join(f"{n + ' (ms)':>16}" for n in names) + f"{'speedup':>10}")
    for kernel, fn in workloads(args.digits).items():
        outputs = {n: fn(found[n]) for n in names}
        if len({repr(o) for o in outputs.values()}) != 1:
            raise SystemExit(f"{kernel}: backends disagree")
        times = {}
        for n in names:
            t = timeit.repeat(lambda: fn(found[n]), number=1, repeat=args.repeat)
            times[n] = min(t) * 1e3
        speed = times["python"] / times["cython"] if "cython" in times else math.nan
        print(f"{kernel:<15}" + "".join(f"{times[n]:>16.3f}" for n in names) + f"{speed:>10.2f}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
