"""Acceptance suite: every primary criterion at its stated tolerance.

Each test prints one `ACCEPT <name>: PASS/FAIL (detail)` line so the
whole gate is auditable from the pytest -s output.  Tolerances are
pinned here, not configurable.
"""

import math
import random
import time

import numpy as np
import pytest
from scipy.integrate import quad

from voronoisum.combinat import lemma45_lhs, lemma45_relative_residual
from voronoisum.kernels import (KernelParams, h_from_k_combination,
                                h_quadrature, h_series, k_contour, k_real,
                                k_series, ode_residual)
from voronoisum.lambert import (LambertConfig, exact_cosine_integral,
                                lambert_lhs, partial_fraction_check,
                                wigert_even_corollary, wigert_odd_corollary,
                                wigert_rhs)
from voronoisum.specialfn import b_transform, bessel, digamma_c
from voronoisum.summation import (TestFunctionSpec, VoronoiConfig,
                                  classical_voronoi_check, finalize_report,
                                  schwartz_lhs, voronoi_lhs, voronoi_rhs,
                                  voronoi_schwartz)

Z_GRID = complex(1.0 / 3.0, 1.0 / 7.0)


def emit(name: str, ok: bool, detail: str) -> None:
    print(f"ACCEPT {name}: {'PASS' if ok else 'FAIL'} ({detail})")


def test_acceptance_generalized_lambert_identity():
    """12 grid cells, |LHS - RHS|/|LHS| <= 1e-9, <= 60 s."""
    t0 = time.perf_counter()
    worst = 0.0
    for k in (1, 2, 3, 4):
        for w in (1.0, 2.0, complex(1.0, 1.0 / 3.0)):
            cfg = LambertConfig(k, Z_GRID, w)
            lhs, _ = lambert_lhs(cfg)
            rhs, _ = wigert_rhs(cfg)
            worst = max(worst, abs(lhs - rhs) / abs(lhs))
    dt = time.perf_counter() - t0
    ok = worst <= 1e-9 and dt <= 60.0
    emit("generalized-lambert-12-cells", ok, f"worst rel {worst:.2e}, {dt:.0f}s")
    assert worst <= 1e-9
    assert dt <= 60.0


def test_acceptance_even_corollary_recovers_classical():
    """k=2, m=0, w in {1/2, 1, 2}: relative discrepancy <= 1e-10, <= 10 s."""
    t0 = time.perf_counter()
    worst = 0.0
    for w in (0.5, 1.0, 2.0):
        got = wigert_even_corollary(2, 0, w)
        lhs, _ = lambert_lhs(LambertConfig(2, 0.0, w))
        worst = max(worst, abs(got - lhs) / abs(lhs))
    dt = time.perf_counter() - t0
    ok = worst <= 1e-10 and dt <= 10.0
    emit("even-corollary-classical", ok, f"worst rel {worst:.2e}, {dt:.1f}s")
    assert worst <= 1e-10
    assert dt <= 10.0


def test_acceptance_odd_corollary_exact():
    """(k=3, m=1) and (k=5, m=2): relative discrepancy <= 1e-10, <= 20 s."""
    t0 = time.perf_counter()
    worst = 0.0
    for (k, m, w) in ((3, 1, 1.0), (5, 2, 2.0)):
        got = wigert_odd_corollary(k, m, w)
        lhs, _ = lambert_lhs(LambertConfig(k, 2 * m - 1, w))
        worst = max(worst, abs(got - lhs) / abs(lhs))
    dt = time.perf_counter() - t0
    ok = worst <= 1e-10 and dt <= 20.0
    emit("odd-corollary-exact", ok, f"worst rel {worst:.2e}, {dt:.1f}s")
    assert worst <= 1e-10
    assert dt <= 20.0


def test_acceptance_hardy_reduction():
    """|H(1,0;x) - (K_0(2 sqrt x) - pi/2 Y_0(2 sqrt x))| <= 1e-9, <= 1 s."""
    t0 = time.perf_counter()
    p = KernelParams(1, 0.0)
    worst = 0.0
    for x in (0.25, 1.0, 4.0, 9.0):
        r = 2.0 * math.sqrt(x)
        want = bessel(0, "K", r) - 0.5 * math.pi * bessel(0, "Y", r)
        worst = max(worst, abs(h_series(p, x).value - want))
    dt = time.perf_counter() - t0
    ok = worst <= 1e-9 and dt <= 1.0
    emit("hardy-reduction", ok, f"worst abs {worst:.2e}, {dt:.2f}s")
    assert worst <= 1e-9
    assert dt <= 1.0


def test_acceptance_combination_identity():
    """series-H vs K-combination within summed est_error (each <= 1e-8)
    on the full k <= 3 grid, <= 30 s."""
    t0 = time.perf_counter()
    ok = True
    worst = 0.0
    for k in (1, 2, 3):
        for z in (-0.4, 0.25, k - 0.6, Z_GRID):
            p = KernelParams(k, z)
            for x in (0.4, 0.7, 1.5, 3.0, 5.0):
                a = h_series(p, x)
                b = h_from_k_combination(p, x)
                ok &= a.est_error <= 1e-8 and b.est_error <= 1e-8
                gap = abs(a.value - b.value)
                budget = max(a.est_error + b.est_error, 1e-12)
                worst = max(worst, gap)
                ok &= gap <= budget
    dt = time.perf_counter() - t0
    ok &= dt <= 30.0
    emit("combination-identity", ok, f"worst gap {worst:.2e}, {dt:.0f}s")
    assert ok


def test_acceptance_cross_route_agreement():
    """h_series vs h_quadrature and k_series vs k_real vs k_contour within
    1e-7 absolute at 30 grid points, <= 120 s."""
    t0 = time.perf_counter()
    worst = 0.0
    pts = 0
    for k in (1, 2, 3):
        for z in (0.25, k - 0.7):
            p = KernelParams(k, z)
            for x in (0.7, 2.0, 5.0):
                if pts % 2 == 0:
                    gap = abs(h_series(p, x).value - h_quadrature(p, x).value)
                else:
                    s = k_series(p, x).value
                    gap = max(abs(s - k_real(p, x).value),
                              abs(s - k_contour(p, x).value))
                worst = max(worst, gap)
                pts += 1
    # top up to 30 points with the other family at fresh x values
    for k in (1, 2):
        for z in (0.1, k - 0.5):
            p = KernelParams(k, z)
            for x in (1.3, 3.7, 6.5):
                s = k_series(p, x).value
                gap = max(abs(s - k_real(p, x).value),
                          abs(s - k_contour(p, x).value))
                worst = max(worst, gap)
                pts += 1
    dt = time.perf_counter() - t0
    ok = worst <= 1e-7 and pts >= 30 and dt <= 120.0
    emit("cross-route-agreement", ok, f"{pts} pts, worst {worst:.2e}, {dt:.0f}s")
    assert worst <= 1e-7
    assert pts >= 30
    assert dt <= 120.0


def test_acceptance_ode():
    """Normalized residual <= 1e-6 at 10 points for k in {1,2}, plus exact
    coefficient equality with the symmetric-polynomial sums, <= 10 s."""
    t0 = time.perf_counter()
    worst = 0.0
    for k, z in ((1, 0.2), (2, 0.5)):
        p = KernelParams(k, z)
        for x in (0.3, 0.7, 1.2, 2.0, 3.5):
            worst = max(worst, ode_residual(p, x))
    coeff_ok = True
    from fractions import Fraction
    for k in (1, 2):
        z = Fraction(2, 5)
        coeff_ok &= lemma45_lhs(k, z, 2 * k + 2) == 1
        coeff_ok &= lemma45_lhs(k, z, 2 * k + 1) == 2 * z + k + 3
        coeff_ok &= lemma45_lhs(k, z, 2 * k) == (z + 1) * (z + k + 1)
        coeff_ok &= all(lemma45_lhs(k, z, m) == 0 for m in range(1, 2 * k))
    dt = time.perf_counter() - t0
    ok = worst <= 1e-6 and coeff_ok and dt <= 10.0
    emit("kernel-ode", ok, f"worst residual {worst:.2e}, coeffs exact={coeff_ok}, {dt:.1f}s")
    assert worst <= 1e-6
    assert coeff_ok
    assert dt <= 10.0


def test_acceptance_symmetric_polynomial_identity():
    """Exact rational path k <= 6; floating path <= 1e-10 relative at 20
    random complex z, <= 5 s."""
    t0 = time.perf_counter()
    import sympy
    exact_ok = True
    for k in range(1, 7):
        z = sympy.Rational(1, 3) + sympy.Rational(1, 7) * sympy.I
        exact_ok &= sympy.expand(lemma45_lhs(k, z, 2 * k + 2) - 1) == 0
        exact_ok &= sympy.expand(lemma45_lhs(k, z, 2 * k + 1) - (2 * z + k + 3)) == 0
        exact_ok &= sympy.expand(lemma45_lhs(k, z, 2 * k) - (z + 1) * (z + k + 1)) == 0
        exact_ok &= all(sympy.expand(lemma45_lhs(k, z, m)) == 0
                        for m in range(1, 2 * k))
    rng = random.Random(12345)
    worst = 0.0
    for _ in range(20):
        k = rng.randint(1, 6)
        z = complex(rng.uniform(-0.9, k - 0.1), rng.uniform(-1.0, 1.0))
        worst = max(worst, lemma45_relative_residual(k, z))
    dt = time.perf_counter() - t0
    ok = exact_ok and worst <= 1e-10 and dt <= 5.0
    emit("symmetric-polynomial-identity", ok,
         f"exact={exact_ok}, float worst {worst:.2e}, {dt:.1f}s")
    assert exact_ok
    assert worst <= 1e-10
    assert dt <= 5.0


def _b_series_reference(z_int: int, b: complex) -> complex:
    # independent evaluation of the defining series at an exact integer z
    # (mpmath reciprocal-gamma handles the vanishing head terms)
    from mpmath import mp, mpc, mpf, rgamma, cosh, cos, pi, power
    with mp.workdps(30 + int(0.9 * abs(b))):
        zz, bb = mpc(z_int), mpc(b)
        acc = mpc(0)
        pw = mpc(1)
        for n in range(0, 400):
            acc += pw * rgamma(2 * n - zz + 2)
            pw *= bb * bb
            if n > 5 and abs(pw * rgamma(2 * n - zz + 2)) < mpf('1e-45') * (abs(acc) + 1):
                break
        sec = pi / (2 * cos(pi * zz / 2))
        return complex(sec * power(bb, zz - 1) * cosh(bb) - sec * acc)


def test_acceptance_b_transform_lemmas():
    """Closed forms vs series <= 1e-10; the z=1 value vs quadrature <= 1e-8;
    the exact cosine integral vs quadrature <= 1e-7; <= 20 s."""
    t0 = time.perf_counter()
    worst_series = 0.0
    for (z_int, b) in ((0, 1.3), (2, 0.8), (4, 2.0), (-2, 1.1), (-4, 0.7),
                       (0, complex(1.5, 0.4)), (2, complex(2.0, -0.6))):
        closed = b_transform(float(z_int), b)
        ref = _b_series_reference(z_int, b)
        worst_series = max(worst_series, abs(closed - ref))
    # z=1 (Raabe's transform) against direct quadrature
    val = b_transform(1.0, 1.0)
    series = sum(digamma_c(2 * n + 1).real / math.factorial(2 * n)
                 for n in range(40))
    zeros = [0.0] + [math.pi / 2 + m * math.pi for m in range(600)]
    parts = [quad(lambda t: t * math.cos(t) / (t * t + 1.0), a, b_, limit=80)[0]
             for a, b_ in zip(zeros[:-1], zeros[1:])]
    sums = np.cumsum(parts)
    row = sums[-60:]
    for _ in range(25):
        row = 0.5 * (row[:-1] + row[1:])
    q_oracle = row[-1]
    raabe_gap = max(abs(val - series), abs(val - q_oracle))
    # exact cosine integral vs quadrature
    cos_gap = 0.0
    for (k, m, a) in ((2, 0, 2.0), (4, 1, 1.0)):
        closed = exact_cosine_integral(k, m, a)
        zeros = [0.0] + [math.pi / 2 + i * math.pi for i in range(1200)]
        parts = [quad(lambda t: t ** (k + 2 * m) * math.cos(t)
                      / (t ** (2 * k) + a ** (2 * k)), lo, hi, limit=60)[0]
                 for lo, hi in zip(zeros[:-1], zeros[1:])]
        sums = np.cumsum(parts)
        row = sums[-60:]
        for _ in range(25):
            row = 0.5 * (row[:-1] + row[1:])
        cos_gap = max(cos_gap, abs(closed.real - row[-1]) + abs(closed.imag))
    dt = time.perf_counter() - t0
    ok = worst_series <= 1e-10 and raabe_gap <= 1e-8 and cos_gap <= 1e-7 \
        and dt <= 20.0
    emit("b-transform-lemmas", ok,
         f"series {worst_series:.2e}, raabe {raabe_gap:.2e}, "
         f"cosine {cos_gap:.2e}, {dt:.1f}s")
    assert worst_series <= 1e-10
    assert raabe_gap <= 1e-8
    assert cos_gap <= 1e-7
    assert dt <= 20.0


def test_acceptance_partial_fractions():
    """Max residual <= 1e-12 over 200 random samples, k <= 6, <= 2 s."""
    t0 = time.perf_counter()
    rng = random.Random(777)
    worst = 0.0
    for _ in range(200):
        k = rng.randint(1, 6)
        a = complex(rng.uniform(0.4, 2.0), rng.uniform(-0.6, 0.6))
        t = rng.uniform(0.05, 6.0)
        worst = max(worst, partial_fraction_check(k, a, t))
    dt = time.perf_counter() - t0
    ok = worst <= 1e-12 and dt <= 2.0
    emit("partial-fractions", ok, f"worst {worst:.2e}, {dt:.1f}s")
    assert worst <= 1e-12
    assert dt <= 2.0


@pytest.mark.slow
def test_acceptance_finite_voronoi():
    """Three dyadic protocols on [0.5, 10.5] with f = e^{-t}: the last
    three truncations (256/512/1024) within tolerance of the LHS with a
    non-increasing trend; <= 10 min total."""
    t0 = time.perf_counter()
    protocols = [
        ("k2-generic", KernelParams(2, 0.5), "series", 1e-3),
        ("k2-log-case", KernelParams(2, 1.0), "series", 1e-3),
        ("k1-bessel", KernelParams(1, 1.0 / 3.0), "bessel", 1e-4),
    ]
    f = TestFunctionSpec("exp_decay", w=1.0)
    all_ok = True
    details = []
    for (name, p, impl, tol) in protocols:
        cfg = VoronoiConfig(p, 0.5, 10.5, n_terms=1024, kernel_impl=impl)
        lhs = voronoi_lhs(cfg, f)
        rep = voronoi_rhs(cfg, f, levels=[64, 128, 256, 512, 1024])
        rep = finalize_report(rep, lhs, tol)
        last3 = [e for (_, _, e) in rep.trace[-3:]]
        ok = all(e <= tol for e in last3) and rep.trend_nonincreasing()
        all_ok &= ok
        details.append(f"{name}: {['%.1e' % e for e in last3]}")
    dt = time.perf_counter() - t0
    all_ok &= dt <= 600.0
    emit("finite-voronoi-dyadic", all_ok, "; ".join(details) + f"; {dt:.0f}s")
    assert all_ok


@pytest.mark.slow
def test_acceptance_schwartz_voronoi():
    """Exponential test function matches the Lambert pipeline to 1e-9;
    gaussian self-convergent to 1e-4 at N=200; <= 5 min."""
    t0 = time.perf_counter()
    gap_exp = 0.0
    for (k, z, w) in ((2, 0.5, 1.0), (3, 1.0 / 3.0, 2.0), (1, 0.25, 1.0)):
        p = KernelParams(k, z)
        f = TestFunctionSpec("exp_decay", w=w)
        rep = voronoi_schwartz(p, f)
        wr, _ = wigert_rhs(LambertConfig(k, z, w))
        gap_exp = max(gap_exp, abs(rep.rhs - wr))
    p = KernelParams(2, 0.0)
    f = TestFunctionSpec("gaussian")
    lhs = schwartz_lhs(p, f)
    rep = voronoi_schwartz(p, f, n_terms=200)
    gap_gauss = abs(lhs - rep.rhs)
    dt = time.perf_counter() - t0
    ok = gap_exp <= 1e-9 and gap_gauss <= 1e-4 and dt <= 300.0
    emit("schwartz-voronoi", ok,
         f"exp-vs-lambert {gap_exp:.2e}, gaussian {gap_gauss:.2e}, {dt:.0f}s")
    assert gap_exp <= 1e-9
    assert gap_gauss <= 1e-4
    assert dt <= 300.0


def test_acceptance_classical_sanity():
    """x=5.5: LHS exactly 10; RHS within 5e-3 at N=5000; <= 30 s."""
    t0 = time.perf_counter()
    rep = classical_voronoi_check(5.5, 5000)
    gap = rep.trace[-1][2]
    dt = time.perf_counter() - t0
    ok = rep.lhs == 10.0 and gap <= 5e-3 and dt <= 30.0
    emit("classical-divisor-formula", ok, f"lhs={rep.lhs}, gap {gap:.2e}, {dt:.1f}s")
    assert rep.lhs == 10.0
    assert gap <= 5e-3
    assert dt <= 30.0


def test_acceptance_asymptotic_envelope():
    """Peak-envelope ratio within 10% of 1 for k=1, y in [20, 40]; <= 10 s."""
    t0 = time.perf_counter()
    p = KernelParams(1, 0.0)
    amp = lambda y: math.sqrt(math.pi) / (2.0 * y ** 0.25)
    ys = np.arange(20.0, 40.0, 0.05)
    vals = np.array([abs(h_series(p, float(y)).value) for y in ys])
    ratios = []
    for i in range(2, len(ys) - 2):
        if vals[i] > vals[i - 1] and vals[i] > vals[i + 1] and vals[i] > 0.05:
            ratios.append(vals[i] / amp(float(ys[i])))
    worst = max(abs(r - 1.0) for r in ratios)
    dt = time.perf_counter() - t0
    ok = bool(ratios) and worst <= 0.1 and dt <= 10.0
    emit("asymptotic-envelope", ok,
         f"{len(ratios)} peaks, worst |ratio-1| {worst:.3f}, {dt:.1f}s")
    assert ratios
    assert worst <= 0.1
    assert dt <= 10.0
