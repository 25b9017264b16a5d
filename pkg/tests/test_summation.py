"""Voronoi-formula harness checks (unit scale; the full dyadic
protocols live in the acceptance module)."""

import math

import pytest
from scipy.integrate import quad

from voronoisum.kernels import KernelParams
from voronoisum.specialfn import DomainError, EULER_GAMMA
from voronoisum.summation import (TestFunctionSpec, VerificationReport,
                                  VoronoiConfig, _chirp_integral,
                                  _kernel_table, _main_integral,
                                  classical_voronoi_check, finalize_report,
                                  schwartz_lhs, voronoi_lhs, voronoi_rhs,
                                  voronoi_schwartz)


def test_lhs_enumeration():
    p = KernelParams(1, 0.0)
    cfg = VoronoiConfig(p, 0.5, 3.5)
    f = TestFunctionSpec("exp_decay", w=1.0)
    want = math.exp(-1) + 2 * math.exp(-2) + 2 * math.exp(-3)
    assert abs(voronoi_lhs(cfg, f) - want) < 1e-14


def test_lhs_empty_interval():
    cfg = VoronoiConfig(KernelParams(2, 0.5), 1.1, 1.9)
    assert voronoi_lhs(cfg, TestFunctionSpec("exp_decay")) == 0


def test_lhs_table_driven():
    from voronoisum.arith import sigma_zk
    p = KernelParams(2, 0.5)
    cfg = VoronoiConfig(p, 0.5, 10.5)
    f = TestFunctionSpec("exp_decay", w=1.0)
    want = sum(sigma_zk(2, 0.5, n) * math.exp(-n) for n in range(1, 11))
    assert abs(voronoi_lhs(cfg, f) - want) < 1e-12


def test_config_validation():
    with pytest.raises(DomainError):
        VoronoiConfig(KernelParams(2, 0.5), 1.0, 3.5)    # integer endpoint
    with pytest.raises(DomainError):
        VoronoiConfig(KernelParams(2, 0.5), 3.5, 0.5)
    with pytest.raises(DomainError):
        VoronoiConfig(KernelParams(2, 0.5), 0.5, 3.5, kernel_impl="bessel")
    with pytest.raises(DomainError):
        TestFunctionSpec("exp_decay", w=-1.0)
    with pytest.raises(DomainError):
        TestFunctionSpec("mystery")


def test_test_function_mellin_data():
    f = TestFunctionSpec("exp_decay", w=2.0)
    assert abs(f.mellin(1.0) - 0.5) < 1e-14              # Gamma(1)/2
    assert f.f0plus() == 1.0
    assert abs(f.integral_0_inf() - 0.5) < 1e-14
    g = TestFunctionSpec("gaussian")
    assert abs(g.mellin(1.0) - 0.5 * math.sqrt(math.pi)) < 1e-13
    assert abs(g.integral_0_inf() - 0.5 * math.sqrt(math.pi)) < 1e-14
    pe = TestFunctionSpec("poly_exp", w=1.0, p=2)
    assert pe.f0plus() == 0.0
    assert abs(pe.integral_0_inf() - 2.0) < 1e-13


def test_main_integral_log_case():
    # z = k-1: integrand ((k+1) gamma + log t)/k
    p = KernelParams(2, 1.0)
    cfg = VoronoiConfig(p, 0.5, 10.5)
    f = TestFunctionSpec("exp_decay", w=1.0)
    got, _ = _main_integral(cfg, f)
    want, _ = quad(lambda t: math.exp(-t) * (3 * EULER_GAMMA + math.log(t)) / 2,
                   0.5, 10.5, limit=200)
    assert abs(got - want) < 1e-9


def test_generic_and_bessel_kernels_agree_termwise():
    # k=1, z=0: the dual integrals from the residue-series kernel and the
    # Bessel closed form agree term by term
    p = KernelParams(1, 0.0)
    lam_of = lambda n: (2 * math.pi) ** 2 * n
    u_lo, u_hi = 0.6, 2.8
    tab_s = _kernel_table(p, lam_of(1) * u_lo * 0.9, lam_of(25) * u_hi, "series")
    tab_b = _kernel_table(p, lam_of(1) * u_lo * 0.9, lam_of(25) * u_hi, "bessel")
    g = lambda u: math.exp(-u)
    for n in (1, 5, 25):
        a = _chirp_integral(tab_s.value, g, lam_of(n), u_lo, u_hi, 1)
        b = _chirp_integral(tab_b.value, g, lam_of(n), u_lo, u_hi, 1)
        assert abs(a - b) < 1e-9


def test_rhs_additive_over_interval_splits():
    p = KernelParams(1, 1.0 / 3.0)
    f = TestFunctionSpec("exp_decay", w=1.0)
    kw = dict(n_terms=128, kernel_impl="bessel")
    full = voronoi_rhs(VoronoiConfig(p, 0.5, 6.5, **kw), f, levels=[128])
    left = voronoi_rhs(VoronoiConfig(p, 0.5, 2.5, **kw), f, levels=[128])
    right = voronoi_rhs(VoronoiConfig(p, 2.5, 6.5, **kw), f, levels=[128])
    assert abs(full.trace[-1][1] - left.trace[-1][1] - right.trace[-1][1]) < 1e-8


def test_finite_voronoi_small_case_converges():
    # light version of the dyadic protocol (acceptance runs the full one)
    p = KernelParams(1, 1.0 / 3.0)
    cfg = VoronoiConfig(p, 0.5, 10.5, n_terms=256, kernel_impl="bessel")
    f = TestFunctionSpec("exp_decay", w=1.0)
    lhs = voronoi_lhs(cfg, f)
    rep = finalize_report(voronoi_rhs(cfg, f, levels=[128, 256]), lhs, 5e-4)
    assert rep.trace[-1][2] < 5e-4
    assert rep.passed


def test_schwartz_exp_matches_lambert_pipeline():
    from voronoisum.lambert import LambertConfig, wigert_rhs
    for (k, z, w) in [(2, 0.5, 1.0), (1, 0.25, 1.0)]:
        p = KernelParams(k, z)
        f = TestFunctionSpec("exp_decay", w=w)
        rep = voronoi_schwartz(p, f)
        wr, _ = wigert_rhs(LambertConfig(k, z, w))
        assert abs(rep.rhs - wr) < 1e-9
        lhs = schwartz_lhs(p, f)
        assert abs(lhs - rep.rhs) < 1e-9


def test_schwartz_gaussian_light():
    p = KernelParams(2, 0.0)
    f = TestFunctionSpec("gaussian")
    lhs = schwartz_lhs(p, f)
    rep = voronoi_schwartz(p, f, n_terms=50)
    assert abs(lhs - rep.rhs) < 1e-4


def test_schwartz_poly_exp_kind():
    p = KernelParams(2, 0.5)
    f = TestFunctionSpec("poly_exp", w=1.0, p=1)
    lhs = schwartz_lhs(p, f)
    rep = voronoi_schwartz(p, f, n_terms=120)
    assert abs(lhs - rep.rhs) < 1e-4


def test_finite_voronoi_variant_interval_and_rate():
    p = KernelParams(2, 0.5)
    cfg = VoronoiConfig(p, 1.5, 7.5, n_terms=512, kernel_impl="series")
    f = TestFunctionSpec("exp_decay", w=2.0)
    lhs = voronoi_lhs(cfg, f)
    rep = finalize_report(voronoi_rhs(cfg, f, levels=[256, 512]), lhs, 1e-3)
    assert all(e <= 1e-3 for (_, _, e) in rep.trace)


def test_finite_voronoi_k3():
    p = KernelParams(3, 0.5)
    cfg = VoronoiConfig(p, 0.5, 6.5, n_terms=256, kernel_impl="series")
    f = TestFunctionSpec("exp_decay", w=1.0)
    lhs = voronoi_lhs(cfg, f)
    rep = finalize_report(voronoi_rhs(cfg, f, levels=[128, 256]), lhs, 5e-3)
    assert all(e <= 5e-3 for (_, _, e) in rep.trace)


def test_classical_values():
    rep = classical_voronoi_check(5.5, 2500)
    assert rep.lhs == 10.0                      # 1+2+2+3+2
    assert rep.trace[-1][2] < 5e-3
    rep0 = classical_voronoi_check(0.5, 2000)
    assert rep0.lhs == 0.0
    assert rep0.trace[-1][2] < 1e-3
    with pytest.raises(DomainError):
        classical_voronoi_check(6.0)


def test_classical_trend_shrinks_with_doubling():
    rep = classical_voronoi_check(5.5, 4000)
    errs = [e for (_, _, e) in rep.trace]
    assert min(errs[-2:]) <= errs[0]


def test_report_serialization():
    rep = VerificationReport(lhs=1.0 + 0j, rhs_main=0.5 + 0j,
                             trace=[(8, 0.9 + 0j, 0.1), (16, 0.99 + 0j, 0.01)],
                             terms_used=16, est_error=1e-6, tolerance=0.05)
    d = rep.as_dict()
    assert d["pass"] is True
    assert d["trace"][0][0] == 8
    assert rep.discrepancy == pytest.approx(0.01)
    assert rep.trend_nonincreasing()
