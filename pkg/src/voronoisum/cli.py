"""Command-line front end.

Subcommands evaluate the kernels and the cosine transform, run the
identity verifications, tabulate kernels, and sieve divisor tables.
Outputs are CSV or JSON (schema-versioned); exit status is 0 on
success/pass, 2 on a verification failure, 1 on usage or domain errors.
"""

from __future__ import annotations

import argparse
import sys

from . import report as rpt
from .arith import build_table
from .kernels import (KernelParams, auto_kernel, h_from_k_combination,
                      h_quadrature, h_series, k_contour, k_real, k_series,
                      ode_residual)
from .lambert import (LambertConfig, exact_cosine_integral, lambert_lhs,
                      partial_fraction_check, wigert_even_corollary,
                      wigert_odd_corollary, wigert_rhs)
from .quadrature import QuadratureConfig
from .specialfn import b_transform
from .summation import (TestFunctionSpec, VoronoiConfig, classical_voronoi_check,
                        finalize_report, schwartz_lhs, voronoi_lhs,
                        voronoi_rhs, voronoi_schwartz)


def parse_complex(text: str) -> complex:
    """Complex CLI values: "re" or "re,im"; scientific notation accepted."""
    parts = text.split(",")
    if len(parts) == 1:
        return complex(float(parts[0]), 0.0)
    if len(parts) == 2:
        return complex(float(parts[0]), float(parts[1]))
    raise argparse.ArgumentTypeError(f"cannot parse complex value {text!r}")


def _quad_config(args) -> QuadratureConfig:
    kw = {}
    if getattr(args, "tol", None):
        kw["abs_tol"] = args.tol
        kw["rel_tol"] = args.tol
        kw["osc_rel_tol"] = max(args.tol, 1e-12)
    return QuadratureConfig(**kw)


def _emit(args, text: str) -> None:
    if getattr(args, "out", None):
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _maybe_plot(args, renderer) -> None:
    if getattr(args, "plot", None):
        renderer(args.plot)


def _effective_tolerances(args, defaults: dict) -> dict:
    tol = getattr(args, "tol", None)
    out = dict(defaults)
    if tol:
        out = {k: tol for k in out}
    out["quadrature"] = vars(_quad_config(args))
    return out


def cmd_eval_h(args) -> int:
    p = KernelParams(args.k, args.z)
    cfg = _quad_config(args)
    route = {"series": h_series, "quadrature": h_quadrature,
             "combination": h_from_k_combination, "auto": auto_kernel}[args.route]
    kv = route(p, args.x, cfg)
    entries = [("H", kv.value), ("est_error", complex(kv.est_error))]
    if args.format == "json":
        _emit(args, rpt.verification_json(
            "eval-h", {"k": args.k, "z": args.z, "x": args.x, "route": kv.route},
            {"value": kv.value, "est_error": kv.est_error, "route": kv.route},
            _effective_tolerances(args, {}), True))
    else:
        _emit(args, rpt.eval_csv("eval-h", entries))
    return 0


def cmd_eval_k(args) -> int:
    p = KernelParams(args.k, args.z)
    cfg = _quad_config(args)
    x = args.x
    if args.route == "real":
        if x.imag != 0:
            raise ValueError("the real-integral route requires real x")
        x = x.real
    route = {"series": k_series, "real": k_real, "contour": k_contour}[args.route]
    kv = route(p, x, cfg)
    if args.format == "json":
        _emit(args, rpt.verification_json(
            "eval-k", {"k": args.k, "z": args.z, "x": args.x, "route": kv.route},
            {"value": kv.value, "est_error": kv.est_error, "route": kv.route},
            _effective_tolerances(args, {}), True))
    else:
        _emit(args, rpt.eval_csv("eval-k", [("K", kv.value),
                                            ("est_error", complex(kv.est_error))]))
    return 0


def cmd_eval_b(args) -> int:
    val = b_transform(args.z, args.b)
    if args.format == "json":
        _emit(args, rpt.verification_json(
            "eval-b", {"z": args.z, "b": args.b}, {"value": val},
            _effective_tolerances(args, {}), True))
    else:
        _emit(args, rpt.eval_csv("eval-b", [("B", val)]))
    return 0


def cmd_verify_lambert(args) -> int:
    cfg = LambertConfig(args.k, args.z, args.w)
    lhs, lhs_tail = lambert_lhs(cfg)
    rhs, meta = wigert_rhs(cfg)
    tol = args.tol or 1e-9
    rel = abs(lhs - rhs) / abs(lhs)
    passed = rel <= tol
    doc = rpt.verification_json(
        "verify-lambert",
        {"k": args.k, "z": args.z, "w": args.w},
        {"lhs": lhs, "rhs": rhs, "rel_discrepancy": rel,
         "est_error": lhs_tail, "terms": meta["n_exp"], "route": "b_transform"},
        _effective_tolerances(args, {"rel": tol}), passed)
    _emit(args, doc)
    _maybe_plot(args, lambda path: rpt.render_trace_figure(
        [(meta["n_exp"], rhs, rel)], lhs, path,
        f"generalized Lambert identity k={args.k}"))
    return 0 if passed else 2


def cmd_verify_voronoi(args) -> int:
    p = KernelParams(args.k, args.z)
    cfg = VoronoiConfig(p, args.alpha, args.beta, n_terms=args.n,
                        quad=_quad_config(args), kernel_impl=args.kernel)
    f = TestFunctionSpec(args.f, w=args.w)
    lhs = voronoi_lhs(cfg, f)
    rep = voronoi_rhs(cfg, f)
    tol = args.tol or 1e-3
    rep = finalize_report(rep, lhs, tol)
    doc = rpt.verification_json(
        "verify-voronoi",
        {"k": args.k, "z": args.z, "alpha": args.alpha, "beta": args.beta,
         "f": args.f, "w": args.w, "n_terms": args.n, "kernel": args.kernel},
        rep.as_dict(), _effective_tolerances(args, {"abs": tol}), rep.passed)
    _emit(args, doc)
    _maybe_plot(args, lambda path: rpt.render_trace_figure(
        rep.trace, lhs, path, "finite-interval dual-series convergence"))
    return 0 if rep.passed else 2


def cmd_verify_voronoi_schwartz(args) -> int:
    p = KernelParams(args.k, args.z)
    f = TestFunctionSpec(args.f, w=args.w)
    lhs = schwartz_lhs(p, f)
    rep = voronoi_schwartz(p, f, n_terms=args.n)
    tol = args.tol or (1e-9 if args.f == "exp_decay" else 1e-4)
    rep = finalize_report(rep, lhs, tol)
    doc = rpt.verification_json(
        "verify-voronoi-schwartz",
        {"k": args.k, "z": args.z, "f": args.f, "w": args.w, "n_terms": args.n},
        rep.as_dict(), _effective_tolerances(args, {"abs": tol}), rep.passed)
    _emit(args, doc)
    _maybe_plot(args, lambda path: rpt.render_trace_figure(
        rep.trace, lhs, path, "Schwartz-class dual-series convergence"))
    return 0 if rep.passed else 2


def cmd_verify_classical(args) -> int:
    rep = classical_voronoi_check(args.x, args.n)
    tol = args.tol or 5e-3
    rep.tolerance = tol
    passed = rep.trace[-1][2] <= tol
    doc = rpt.verification_json(
        "verify-classical", {"x": args.x, "n_terms": args.n},
        rep.as_dict(), _effective_tolerances(args, {"abs": tol}), passed)
    _emit(args, doc)
    _maybe_plot(args, lambda path: rpt.render_trace_figure(
        rep.trace, rep.lhs, path, "classical divisor formula"))
    return 0 if passed else 2


def cmd_verify_lemmas(args) -> int:
    results = {}
    passed = True
    which = args.which
    if which in ("lemma45", "all"):
        from .combinat import lemma45_relative_residual
        res = max(lemma45_relative_residual(k, complex(0.31, 0.17))
                  for k in range(1, args.k + 1))
        results["lemma45_max_rel_residual"] = res
        passed &= res < 1e-10
    if which in ("partial-fractions", "all"):
        import random
        rng = random.Random(7)
        worst = 0.0
        for k in range(1, args.k + 1):
            for _ in range(50):
                a = complex(rng.uniform(0.5, 2.0), rng.uniform(-0.5, 0.5))
                worst = max(worst, partial_fraction_check(k, a, rng.uniform(0.1, 5.0)))
        results["partial_fraction_max_residual"] = worst
        passed &= worst < 1e-12
    if which in ("cosine-integral", "all"):
        got = exact_cosine_integral(2, 0, 2.0)
        results["cosine_integral_k2_m0_a2"] = got
        passed &= abs(got.imag) < 1e-12
    if which in ("ode", "all"):
        res = ode_residual(KernelParams(min(args.k, 2), 0.4), 1.0)
        results["ode_residual"] = res
        passed &= res < 1e-6
    _emit(args, rpt.verification_json(
        "verify-lemmas", {"which": which, "k": args.k}, results,
        _effective_tolerances(args, {"exact": 1e-12}), passed))
    return 0 if passed else 2


def cmd_tabulate(args) -> int:
    p = KernelParams(args.k, args.z)
    cfg = _quad_config(args)
    xs = []
    x = args.x_min
    while x <= args.x_max + 1e-12:
        xs.append(x)
        x += args.step
    rows = []
    for x in xs:
        kv = auto_kernel(p, x, cfg) if x > 0 else h_series(p, 0.0, cfg)
        rows.append((x, kv.value, kv.route, kv.est_error))
    _emit(args, rpt.kernel_csv(rows))
    _maybe_plot(args, lambda path: rpt.render_kernel_figure(
        rows, path, f"oscillatory kernel, k={args.k}, z={args.z}"))
    return 0


def cmd_sieve(args) -> int:
    tab = build_table(args.k, args.z, args.n)
    _emit(args, tab.to_csv_string())
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="voronoisum",
        description="Generalized divisor sums, their summation kernels, "
                    "and identity verification.")
    ap.add_argument("--threads", type=int, default=1,
                    help="worker cap (evaluation is deterministic regardless)")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p, k=True, z=True):
        if k:
            p.add_argument("--k", type=int, required=True)
        if z:
            p.add_argument("--z", type=parse_complex, required=True)
        p.add_argument("--tol", type=float, default=None)
        p.add_argument("--out", default=None)
        p.add_argument("--format", choices=("csv", "json"), default="json")
        p.add_argument("--plot", default=None, metavar="PNG",
                       help="render a figure next to the output")

    p = sub.add_parser("eval-h", help="evaluate the oscillatory kernel H")
    common(p)
    p.add_argument("--x", type=float, required=True)
    p.add_argument("--route", default="series",
                   choices=("series", "quadrature", "combination", "auto"))
    p.set_defaults(fn=cmd_eval_h)

    p = sub.add_parser("eval-k", help="evaluate the companion kernel K")
    common(p)
    p.add_argument("--x", type=parse_complex, required=True)
    p.add_argument("--route", default="series", choices=("series", "real", "contour"))
    p.set_defaults(fn=cmd_eval_k)

    p = sub.add_parser("eval-b", help="evaluate the cosine transform B(z,b)")
    common(p, k=False)
    p.add_argument("--b", type=parse_complex, required=True)
    p.set_defaults(fn=cmd_eval_b)

    p = sub.add_parser("verify-lambert", help="generalized Lambert identity")
    common(p)
    p.add_argument("--w", type=parse_complex, required=True)
    p.set_defaults(fn=cmd_verify_lambert)

    p = sub.add_parser("verify-voronoi", help="finite-interval summation formula")
    common(p)
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--beta", type=float, required=True)
    p.add_argument("--f", default="exp_decay",
                   choices=("exp_decay", "gaussian", "poly_exp"))
    p.add_argument("--w", type=parse_complex, default=1.0 + 0.0j)
    p.add_argument("--n", type=int, default=1024)
    p.add_argument("--kernel", default="series", choices=("series", "bessel"))
    p.set_defaults(fn=cmd_verify_voronoi)

    p = sub.add_parser("verify-voronoi-schwartz",
                       help="Schwartz-class summation formula")
    common(p)
    p.add_argument("--f", default="exp_decay",
                   choices=("exp_decay", "gaussian", "poly_exp"))
    p.add_argument("--w", type=parse_complex, default=1.0 + 0.0j)
    p.add_argument("--n", type=int, default=200)
    p.set_defaults(fn=cmd_verify_voronoi_schwartz)

    p = sub.add_parser("verify-classical", help="classical divisor-count formula")
    common(p, k=False, z=False)
    p.add_argument("--x", type=float, required=True)
    p.add_argument("--n", type=int, default=5000)
    p.set_defaults(fn=cmd_verify_classical)

    p = sub.add_parser("verify-lemmas", help="exact combinatorial identities")
    p.add_argument("--which", default="all",
                   choices=("lemma45", "partial-fractions", "cosine-integral",
                            "ode", "all"))
    p.add_argument("--k", type=int, default=3)
    p.add_argument("--tol", type=float, default=None)
    p.add_argument("--out", default=None)
    p.add_argument("--format", choices=("csv", "json"), default="json")
    p.add_argument("--plot", default=None)
    p.set_defaults(fn=cmd_verify_lemmas)

    p = sub.add_parser("tabulate", help="tabulate the kernel to CSV")
    common(p)
    p.add_argument("--x-min", type=float, default=0.0)
    p.add_argument("--x-max", type=float, required=True)
    p.add_argument("--step", type=float, required=True)
    p.set_defaults(fn=cmd_tabulate)

    p = sub.add_parser("sieve", help="sieve divisor tables to CSV")
    common(p)
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(fn=cmd_sieve)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as e:
        return 1 if e.code not in (0, None) else 0
    try:
        return args.fn(args)
    except (ValueError, RuntimeError) as e:
        sys.stderr.write(f"error: {e}\n")
        return 1


if __name__ == "__main__":
    sys.exit(main())
