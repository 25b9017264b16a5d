"""Numerical integration engines.

Three engines cover everything the verification harness needs:

* adaptive Gauss-Kronrod on finite intervals, with a tanh-sinh fallback
  for endpoint algebraic singularities,
* semi-infinite oscillatory tails integrated half-period by half-period
  with Euler acceleration of the alternating partial sums,
* vertical-line (Mellin-Barnes) integrals truncated where a declared
  exponential decay rate drives the tail below tolerance.

All engines are stateless and reduce panel results in index order, so a
fixed configuration reproduces results bit-for-bit.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

from .accum import ComplexDD

__all__ = [
    "QuadratureConfig", "ContourSpec", "QuadratureError",
    "PolynomialDecayError", "integrate_finite", "integrate_osc_tail",
    "integrate_vertical_line",
]


class QuadratureError(RuntimeError):
    """Engine failed to reach the requested tolerance."""


class PolynomialDecayError(ValueError):
    """Vertical-line integrand lacks net exponential decay.

    This is the conditionally-convergent regime: the truncated-line
    model used for the tail bound does not apply, and the engine refuses
    rather than return an unbounded-error result.
    """


@dataclass(frozen=True)
class QuadratureConfig:
    abs_tol: float = 1e-12
    rel_tol: float = 1e-10
    max_subdivisions: int = 4000
    osc_max_halfperiods: int = 512
    accel_order: int = 14
    contour_height_cut: float = 0.0   # 0 -> solve from the decay model
    dd_mode: bool = True
    osc_rel_tol: float = 1e-8

    def __post_init__(self):
        if self.abs_tol <= 0 or self.rel_tol <= 0:
            raise ValueError("tolerances must be positive")
        if self.osc_max_halfperiods < 8:
            raise ValueError("osc_max_halfperiods must be >= 8")


DEFAULT_CONFIG = QuadratureConfig()


# 15-point Kronrod nodes/weights with embedded 7-point Gauss (QUADPACK).
_XGK = (
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
)
_WGK = (
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
)
_WG = (
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
)


def _gk15(f: Callable[[float], complex], a: float, b: float):
    """15-point Kronrod estimate with Gauss-Kronrod error estimate."""
    c = 0.5 * (a + b)
    h = 0.5 * (b - a)
    fc = f(c)
    resk = _WGK[7] * fc
    resg = _WG[3] * fc
    for j in range(7):
        x = h * _XGK[j]
        f1 = f(c - x)
        f2 = f(c + x)
        resk += _WGK[j] * (f1 + f2)
        if j % 2 == 1:  # nodes 1,3,5 are the Gauss nodes
            resg += _WG[j // 2] * (f1 + f2)
    resk *= h
    resg *= h
    return resk, abs(resk - resg)


def _tanh_sinh(f, a, b, cfg: QuadratureConfig):
    """Tanh-sinh rule on (a, b); handles endpoint algebraic singularities."""
    mid = 0.5 * (a + b)
    half = 0.5 * (b - a)
    hmax = 6.5
    prev = None
    for level in range(3, 13):
        h = hmax / (1 << level)
        total = 0.0 + 0.0j
        n = int(hmax / h)
        for i in range(-n, n + 1):
            t = i * h
            sh = 0.5 * math.pi * math.sinh(t)
            w = 0.5 * math.pi * math.cosh(t) / math.cosh(sh) ** 2
            u = math.tanh(sh)
            x = mid + half * u
            if x <= a or x >= b:
                continue
            total += w * f(x)
        total *= half * h
        if prev is not None:
            err = abs(total - prev)
            if err < max(cfg.abs_tol, cfg.rel_tol * abs(total)):
                return total, err
        prev = total
    raise QuadratureError("tanh-sinh failed to converge")


def _probe_singular(f, a, b) -> bool:
    """Endpoint blow-up probe: growing |f| toward either endpoint."""
    span = b - a
    try:
        vals_a = [abs(f(a + span * h)) for h in (1e-3, 1e-6, 1e-9)]
        vals_b = [abs(f(b - span * h)) for h in (1e-3, 1e-6, 1e-9)]
    except (ZeroDivisionError, OverflowError, ValueError):
        return True
    grow = lambda v: v[2] > 50.0 * v[1] > 0 and v[1] > 50.0 * v[0] > 0
    return grow(vals_a) or grow(vals_b)


def integrate_finite(f: Callable[[float], complex], a: float, b: float,
                     cfg: QuadratureConfig = DEFAULT_CONFIG):
    """Adaptive GK15 integral of f over [a, b] -> (value, error_estimate)."""
    if a == b:
        return 0.0 + 0.0j, 0.0
    if _probe_singular(f, a, b):
        return _tanh_sinh(f, a, b, cfg)
    val, err = _gk15(f, a, b)
    segments = [(err, a, b, val)]
    total_val, total_err = val, err
    splits = 0
    while total_err > max(cfg.abs_tol, cfg.rel_tol * abs(total_val)):
        if splits >= cfg.max_subdivisions:
            raise QuadratureError(
                f"integrate_finite: no convergence after {splits} subdivisions "
                f"(err~{total_err:.2e})")
        segments.sort(key=lambda s: s[0])
        err0, a0, b0, v0 = segments.pop()
        m = 0.5 * (a0 + b0)
        v1, e1 = _gk15(f, a0, m)
        v2, e2 = _gk15(f, m, b0)
        total_val += v1 + v2 - v0
        total_err += e1 + e2 - err0
        segments.append((e1, a0, m, v1))
        segments.append((e2, m, b0, v2))
        splits += 1
    # deterministic final reduction in interval order
    segments.sort(key=lambda s: s[1])
    total_val = sum(s[3] for s in segments)
    total_err = sum(s[0] for s in segments)
    return total_val, total_err


def euler_accelerate(partials, order: int = 14):
    """Iterated-averaging (Euler) acceleration of a partial-sum sequence.

    Returns (limit, error_estimate); the estimate is the last correction
    applied, which bounds the residual for alternating-decay remainders.
    """
    row = list(partials)
    if len(row) < 3:
        return row[-1], abs(row[-1] - row[0]) if len(row) > 1 else abs(row[-1])
    best = row[-1]
    prev_best = row[-2]
    depth = min(order, len(row) - 1)
    for _ in range(depth):
        row = [0.5 * (row[i] + row[i + 1]) for i in range(len(row) - 1)]
        prev_best, best = best, row[-1]
    return best, abs(best - prev_best)


def integrate_osc_tail(envelope: Callable[[float], complex], freq: float,
                       phase0: float, a: float,
                       cfg: QuadratureConfig = DEFAULT_CONFIG):
    """Integral over [a, inf) of envelope(t) * cos(freq*t + phase0).

    Partitions at the exact cosine zeros, integrates each half-period by
    GK15 and Euler-accelerates the alternating partial sums.  Requires an
    eventually monotone, decaying envelope -> (value, error_estimate).
    """
    if freq <= 0:
        raise ValueError("freq must be positive")
    f = lambda t: envelope(t) * math.cos(freq * t + phase0)
    # first cosine zero at or after a: freq*t + phase0 = pi/2 + m*pi
    m0 = math.ceil((freq * a + phase0 - 0.5 * math.pi) / math.pi)
    t0 = (0.5 * math.pi + m0 * math.pi - phase0) / freq
    if t0 < a:
        m0 += 1
        t0 = (0.5 * math.pi + m0 * math.pi - phase0) / freq
    head = 0.0 + 0.0j
    head_err = 0.0
    if t0 > a + 1e-300:
        head, head_err = integrate_finite(f, a, t0, cfg)
    half = math.pi / freq
    partials = []
    acc = ComplexDD() if cfg.dd_mode else 0.0 + 0.0j
    panel_err = 0.0
    t = t0
    best = None
    best_err = math.inf
    for m in range(cfg.osc_max_halfperiods):
        v, e = _gk15(f, t, t + half)
        acc = acc + v
        panel_err += e
        partials.append(acc.to_complex() if cfg.dd_mode else acc)
        t += half
        if len(partials) >= 8 and (m & 1):
            best, best_err = euler_accelerate(partials, cfg.accel_order)
            scale = abs(head) + abs(best)
            if best_err < max(cfg.abs_tol, cfg.osc_rel_tol * scale) * 0.5:
                return head + best, head_err + panel_err + best_err
    if best is None:
        best, best_err = euler_accelerate(partials, cfg.accel_order)
    scale = abs(head) + abs(best)
    if best_err > max(cfg.abs_tol * 10, 1e-6 * scale):
        raise QuadratureError(
            f"oscillatory tail failed to accelerate (residual ~{best_err:.2e})")
    return head + best, head_err + panel_err + best_err


@dataclass(frozen=True)
class ContourSpec:
    """Vertical line Re(s)=c with an integrand and its declared decay.

    decay_rate is the net exponential rate delta in the envelope model
    C * |t|^amp_power * exp(-delta*|t|), obtained from Stirling
    bookkeeping by the caller; decay_class must be "exponential".
    """

    c: float
    integrand: Callable[[complex], complex]
    decay_class: str = "exponential"
    decay_rate: float = 0.0
    amp_power: float = 0.0
    amp_scale: float = 1.0


def _solve_height(spec: ContourSpec, tol: float) -> float:
    """Smallest T with C T^p e^{-delta T} <= tol/10 (tail of the model)."""
    d, p, C = spec.decay_rate, spec.amp_power, spec.amp_scale
    target = math.log(max(tol, 1e-300) / (10.0 * max(C, 1e-300)))
    T = max(8.0, -target / d)
    for _ in range(60):
        T_new = (p * math.log(T) - target) / d if p != 0.0 else -target / d
        T_new = max(T_new, 4.0)
        if abs(T_new - T) < 1e-9 * T:
            T = T_new
            break
        T = T_new
    return max(T, 8.0)


def integrate_vertical_line(spec: ContourSpec,
                            cfg: QuadratureConfig = DEFAULT_CONFIG):
    """(1/2 pi i) * integral of the integrand along Re(s) = c.

    Truncates at +/- iT where the declared exponential-decay model puts
    the tail below tolerance, then integrates adaptively.  Polynomial
    decay (the conditionally-convergent regime) is rejected.
    """
    if spec.decay_class != "exponential":
        raise PolynomialDecayError(
            "integrate_vertical_line handles exponential net decay only; "
            f"got decay_class={spec.decay_class!r}")
    if spec.decay_rate <= 0.0:
        raise PolynomialDecayError(
            "declared net exponential rate must be positive; this integrand "
            "is in the conditionally-convergent regime")
    tol = max(cfg.abs_tol, 1e-14)
    T = cfg.contour_height_cut if cfg.contour_height_cut > 0 else _solve_height(spec, tol)
    g = lambda t: spec.integrand(complex(spec.c, t))
    # split into panels that track the decay scale
    n_panels = max(12, int(T))
    edges = [(-T) + 2.0 * T * i / n_panels for i in range(n_panels + 1)]
    total = 0.0 + 0.0j
    err = 0.0
    for a, b in zip(edges[:-1], edges[1:]):
        v, e = integrate_finite(g, a, b, cfg)
        total += v
        err += e
    tail_bound = spec.amp_scale * T ** spec.amp_power \
        * math.exp(-spec.decay_rate * T) / spec.decay_rate
    return total / (2.0 * math.pi), err / (2.0 * math.pi) + tail_bound
