import os
import subprocess
import sys

import pytest

from rpf import kernels, make_context
from rpf.precision import to_fixed

BACKENDS = kernels.backends()


@pytest.fixture(scope="module")
def fixed():
    ctx = make_context(60)
    mp = ctx.mp
    bits = ctx.bits
    tol = max(to_fixed(ctx.eps(), bits), 1)
    return ctx, bits, tol, lambda x: to_fixed(mp.mpf(x), bits)


def both():
    if "cython" not in BACKENDS:
        pytest.skip("compiled kernels not built")
    return BACKENDS["python"], BACKENDS["cython"]


def test_backend_names():
    assert BACKENDS["python"].BACKEND == "python"
    assert kernels.BACKEND in BACKENDS


@pytest.mark.parametrize("z, upper, lower", [
    ("0.216", [(1, 6), (5, 6), (1, 2)], [(1, 1), (1, 1)]),
    ("-0.75", [(1, 2), (1, 2)], [(1, 1)]),
    ("0.5", [(-1, 2), (1, 2)], [(1, 1)]),
    ("1e-18", [(1, 3), (2, 3), (1, 2)], [(1, 1), (1, 1)]),
])
def test_hyper_series_parity(fixed, z, upper, lower):
    py, cy = both()
    _, bits, tol, fx = fixed
    a = py.hyper_series(fx(z), bits, upper, lower, tol, 10**5, True)
    b = cy.hyper_series(fx(z), bits, upper, lower, tol, 10**5, True)
    assert a == b
    assert a[3] == len(a[4]) > 0


def test_hyper_series_cap_parity(fixed):
    py, cy = both()
    _, bits, tol, fx = fixed
    args = (fx("0.999"), bits, [(1, 2), (1, 2)], [(1, 1)], tol, 40)
    assert py.hyper_series(*args) == cy.hyper_series(*args)
    assert py.hyper_series(*args)[3] == -40


@pytest.mark.parametrize("q", ["0.0432139182637722", "0.5", "3.8e-18"])
def test_theta_euler_parity(fixed, q):
    py, cy = both()
    _, bits, tol, fx = fixed
    assert py.theta_sums(fx(q), bits, tol) == cy.theta_sums(fx(q), bits, tol)
    assert py.euler_product(fx(q), bits, tol) == cy.euler_product(fx(q), bits, tol)


@pytest.mark.parametrize("q", ["0.0018674427317079888", "-0.0432139182637722", "-0.3"])
def test_lambert_parity(fixed, q):
    py, cy = both()
    _, bits, tol, fx = fixed
    assert py.lambert_sums(fx(q), bits, tol) == cy.lambert_sums(fx(q), bits, tol)


def test_lll_parity():
    py, cy = both()
    ctx = make_context(80)
    mp = ctx.mp
    x = mp.cbrt(5) + mp.sqrt(2)
    scale = mp.mpf(10) ** 60
    basis = []
    for i in range(7):
        row = [0] * 7 + [int(mp.nint(scale * x**i))]
        row[i] = 1
        basis.append(row)
    assert py.lll_reduce(basis) == cy.lll_reduce(basis)


def test_lll_small_cases():
    for impl in BACKENDS.values():
        assert impl.lll_reduce([[5, 3]]) == [[5, 3]]
        red = impl.lll_reduce([[1, 0, 0], [4, 1, 0], [9, 5, 1]])
        assert sorted(sum(v * v for v in row) for row in red) == [1, 1, 1]
        with pytest.raises(ValueError):
            impl.lll_reduce([[1, 2], [2, 4]])


def test_euler_product_value(fixed):
    ctx, bits, tol, fx = fixed
    mp = ctx.mp
    for impl in BACKENDS.values():
        p, _ = impl.euler_product(fx("0.2"), bits, tol)
        assert abs(mp.mpf((p, -bits)) - mp.qp(mp.mpf("0.2"))) < mp.mpf(10) ** -55


def test_pure_python_switch():
    env = dict(os.environ, RPF_PURE_PYTHON="1")
    out = subprocess.run([sys.executable, "-c", "import rpf; print(rpf.BACKEND)"],
                         capture_output=True, text=True, env=env, check=True)
    assert out.stdout.strip() == "python"


def test_benchmark_script_runs(capsys):
    import importlib.util
    from pathlib import Path

    path = Path(__file__).resolve().parents[1] / "benchmarks" / "bench_kernels.py"
    spec = importlib.util.spec_from_file_location("bench_kernels", path)
    mod = importlib.util.module_from_spec(spec)
    spec.loader.exec_module(mod)
    assert mod.main(["--digits", "60", "--repeat", "1"]) == 0
    out = capsys.readouterr().out
    assert "hyper_series" in out and "lll_reduce" in out
