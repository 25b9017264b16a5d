"""Exact Lambert-series transformations of the generalized divisor sums.

The left side is sum sigma_z^(k)(n) e^{-nw}.  The right side trades it
for zeta main terms plus rotated combinations of the cosine transform
B(z, a_n zeta_{4k}^j) at a_n = 2 pi (2 pi n / w)^{1/k}.

Evaluation splits each B into its exponentially small component, its
algebraic large-argument component, and a residual:

* exponential components are summed directly until they fall below
  tolerance (the decay rate cos(pi (2j-1)/(2k)) * a_n is explicit);
* algebraic components would force ~n^{-1-(1+Re z)/k} tails requiring
  millions of terms, but their n-sums are exact Dirichlet series of
  S_z^(k), i.e. zeta(ks) zeta(s+1-(1+z)/k), so they are summed in
  closed form over all n at once (most rotation-weighted coefficients
  cancel exactly; only the resonant ones survive);
* the residual (exact B minus the two components) is exponentially
  small past a ~ 36 and is corrected exactly for the few n below that.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .arith import build_table
from .kernels import KernelParams
from .specialfn import (DomainError, b_exp_part, b_transform, gamma_c,
                        sinpi, zeta_c)

__all__ = [
    "LambertConfig", "LBarSeries", "lambert_lhs", "lambert_lhs_resummed",
    "wigert_rhs", "wigert_even_corollary", "wigert_odd_corollary",
    "lbar", "partial_fraction_check", "exact_cosine_integral",
    "b_weighted_s_sum",
]

ALG_KMAX = 16
A_CORRECTION_CUT = 36.0
EXP_NEGLIGIBLE = 38.0


@dataclass(frozen=True)
class LambertConfig:
    """Parameters of one Lambert-series identity check."""

    k: int
    z: complex
    w: complex
    n_lhs: int = 0        # 0 -> choose from the geometric tail bound
    n_rhs: int = 0        # 0 -> adaptive

    def __post_init__(self):
        if complex(self.w).real <= 0:
            raise DomainError("Re(w) > 0 required")
        p = KernelParams(self.k, self.z)  # validates the strip
        del p


@dataclass(frozen=True)
class LBarSeries:
    """The rotated Lambert series sum_n S_z^(k)(n) exp(-n^{1/k} w')."""

    k: int
    z: complex
    warg: complex

    def __post_init__(self):
        if complex(self.warg).real <= 0:
            raise DomainError("LBar needs Re(w') > 0")

    def value(self, tol: float = 1e-14) -> complex:
        return lbar(self.k, self.z, self.warg, tol)


def _lhs_cutoff(k: int, z: complex, w: complex) -> int:
    p = max(0.0, complex(z).real) + 1.0
    rw = complex(w).real
    n = 64
    for _ in range(4):
        n = int((42.0 + p * math.log(n + 2)) / rw) + 8
    return max(n, 48)


def lambert_lhs(cfg: LambertConfig) -> tuple[complex, float]:
    """sum_{n<=N} sigma_z^(k)(n) e^{-nw} with a geometric tail bound."""
    k, z, w = cfg.k, complex(cfg.z), complex(cfg.w)
    N = cfg.n_lhs or _lhs_cutoff(k, z, w)
    tab = build_table(k, z, N)
    n = np.arange(1, N + 1, dtype=np.complex128)
    vals = tab.sigma[1:] * np.exp(-n * w)
    total = complex(np.sum(vals))
    p = max(0.0, z.real) + 1.0
    tail = (N + 1) ** p * math.exp(-(N + 1) * w.real) / (1 - math.exp(-w.real))
    return total, tail


def lambert_lhs_resummed(cfg: LambertConfig) -> complex:
    """The same series as sum_n n^z / (e^{n^k w} - 1)."""
    k, z, w = cfg.k, complex(cfg.z), complex(cfg.w)
    total = 0.0 + 0.0j
    n = 1
    while True:
        e = cmath.exp(-(n ** k) * w)
        term = n ** z * e / (1.0 - e)
        total += term
        if abs(term) < 1e-18 * (abs(total) + 1e-30) and n > 3:
            break
        n += 1
        if n > 10 ** 7:
            raise RuntimeError("resummation did not converge")
    return total


def _rotations(k: int, parity_even: bool):
    """[(weight A, rotation r)] entering the B-combination, conjugates
    included; odd k carries the unrotated (1, 1) term."""
    z4k = cmath.exp(1j * math.pi / (2 * k))
    if parity_even:
        rots = [(z4k ** ((2 - k) * (2 * j - 1)), z4k ** (2 * j - 1))
                for j in range(1, k // 2 + 1)]
        return rots + [(A.conjugate(), r.conjugate()) for (A, r) in rots]
    rots = [(1.0 + 0.0j, 1.0 + 0.0j)]
    half = [(z4k ** ((1 - k) * 2 * j), z4k ** (2 * j))
            for j in range(1, (k - 1) // 2 + 1)]
    return rots + half + [(A.conjugate(), r.conjugate()) for (A, r) in half]


def _near_even_integer(zb: complex, tol: float = 1e-3):
    n = round(zb.real)
    if abs(zb - n) < tol and n % 2 == 0 and n >= 0:
        return n
    return None


def b_weighted_s_sum(k: int, z: complex, w: complex,
                     kmax: int = ALG_KMAX) -> tuple[complex, dict]:
    """sum_{n>=1} S_z^(k)(n) n^{wexp} sum_rot A * B(zB, a_n * r).

    zB = z and wexp = (1-z)/k for even k; zB = z+1 and wexp = -z/k for
    odd k; a_n = 2 pi (2 pi n/w)^{1/k}.  This is the common core of the
    generalized Lambert transformation and of the Schwartz-class dual
    series with an exponential test function.
    """
    z, w = complex(z), complex(w)
    even = (k % 2 == 0)
    rots = _rotations(k, even)
    zB = z if even else z + 1.0
    wexp = (1.0 - z) / k if even else -z / k
    argw = cmath.phase(w)

    def a_of(n):
        return 2 * math.pi * (2 * math.pi * n / w) ** (1.0 / k)

    cmin = min((r * cmath.exp(-1j * argw / k)).real for (_, r) in rots)
    n_exp = int((EXP_NEGLIGIBLE / (2 * math.pi * cmin)) ** k * abs(w)
                / (2 * math.pi)) + 3
    n_acc = int((A_CORRECTION_CUT / (2 * math.pi)) ** k * abs(w)
                / (2 * math.pi)) + 3
    n_tab = max(n_exp, n_acc)
    tab = build_table(k, z, n_tab)
    s_vals = tab.s_table

    m_even = _near_even_integer(zB)
    algebraic = m_even is None and abs(sinpi(zB / 2.0)) > 1e-12
    if not algebraic:
        n_acc = 0  # closed-form B is exactly its exponential component
    meta = {"n_exp": n_exp, "n_acc": n_acc, "kmax_used": kmax if algebraic else 0}

    total = 0.0 + 0.0j
    # exact head: full B values while the large-argument split is invalid
    for n in range(1, n_acc + 1):
        a = a_of(n)
        inner = sum(A * b_transform(zB, a * r) for (A, r) in rots)
        total += s_vals[n] * n ** wexp * inner
    # exponential components past the head
    for n in range(n_acc + 1, n_exp + 1):
        a = a_of(n)
        inner = sum(A * b_exp_part(zB, a * r) for (A, r) in rots)
        total += s_vals[n] * n ** wexp * inner
    if algebraic:
        # algebraic components for n > n_acc: Dirichlet tails of S, i.e.
        # zeta(k s) zeta(s+1-(1+z)/k) minus the partial head sum; in this
        # tail form the factorially growing K-coefficients are suppressed
        # by n_acc^{-(2K+2)/k}, so no giant intermediates appear.
        pw2pi = 2 * math.pi * (2 * math.pi / w) ** (1.0 / k)
        ns = np.arange(1, n_acc + 1, dtype=np.complex128)
        svec = s_vals[1:n_acc + 1]
        for K in range(kmax + 1):
            D = sum(A * r ** (-(2 * K + 2)) for (A, r) in rots)
            if abs(D) < 1e-13:
                continue
            sK = (2 * K + 2) / k - wexp
            head = complex(np.sum(svec * ns ** (-sK)))
            tail = zeta_c(k * sK) * zeta_c(sK + 1.0 - (1.0 + z) / k) - head
            coef = -sinpi(zB / 2.0) * gamma_c(zB + 2 * K + 1) \
                * pw2pi ** (-(2.0 * K + 2)) * D
            total += coef * tail
    return total, meta


def wigert_rhs(cfg: LambertConfig) -> tuple[complex, dict]:
    """Right side of the generalized Lambert transformation.

    Main zeta terms plus the parity-dependent prefactor times the
    B-combination sum; excluded at z = k-1 where the main terms merge
    into a logarithmic case.
    """
    k, z, w = cfg.k, complex(cfg.z), complex(cfg.w)
    if abs(z - (k - 1)) < 1e-9:
        raise DomainError("z = k-1 is excluded from this transformation")
    main = -zeta_c(-z) / 2.0 + zeta_c(k - z) / w \
        + gamma_c((1.0 + z) / k) * zeta_c((1.0 + z) / k) \
        / (k * w ** ((1.0 + z) / k))
    if k % 2 == 0:
        pref = (-1.0) ** (k // 2 - 1) * (2 * math.pi) ** (2 + 2.0 / k - z) \
            / (math.pi ** 2 * k * w ** (2.0 / k))
    else:
        pref = (-1.0) ** ((k - 1) // 2) * (2 * math.pi) ** (1 + 1.0 / k - z) \
            / (math.pi ** 2 * k * w ** (1.0 / k))
    core, meta = b_weighted_s_sum(k, z, w)
    return main + pref * core, meta


# ----------------------------------------------------------------------
# The closed-form corollaries (rotated Lambert series)
# ----------------------------------------------------------------------

def lbar(k: int, z: complex, warg: complex, tol: float = 1e-14) -> complex:
    """L-bar_{k,z}(w') = sum_n S_z^(k)(n) exp(-n^{1/k} w'), Re w' > 0."""
    warg = complex(warg)
    rw = warg.real
    if rw <= 0:
        raise DomainError("LBar needs Re(w') > 0")
    # n^{1/k} rw >= 40 kills the tail; S grows slower than n
    N = int((42.0 / rw) ** k) + 8
    tab = build_table(k, z, N)
    n = np.arange(1, N + 1, dtype=np.float64)
    ex = np.exp(-(n ** (1.0 / k)) * warg)
    return complex(np.sum(tab.s_table[1:] * ex))


def wigert_even_corollary(k: int, m: int, w: complex) -> complex:
    """Even-k closed form at z = 2m (0 <= m < k/2); m = 0 is the classical
    even-k divisor identity."""
    if k < 2 or k % 2 != 0:
        raise DomainError("k must be even and >= 2")
    if not 0 <= m < k // 2:
        raise DomainError("m must satisfy 0 <= m < k/2")
    w = complex(w)
    z = 2 * m
    main = -zeta_c(-z) / 2.0 + zeta_c(k - z) / w \
        + gamma_c((1.0 + z) / k) * zeta_c((1.0 + z) / k) \
        / (k * w ** ((1.0 + z) / k))
    W = 2 * math.pi * (2 * math.pi / w) ** (1.0 / k)
    tail = 0.0 + 0.0j
    for j in range(1, k // 2 + 1):
        ph = cmath.exp(1j * math.pi / (2 * k) * (1 - k + 2 * m) * (2 * j - 1))
        rot = cmath.exp(1j * math.pi * (2 * j - 1) / (2 * k))
        tail += ph * lbar(k, float(z), W * rot) \
            + ph.conjugate() * lbar(k, float(z), W * rot.conjugate())
    pref = (-1.0) ** (k // 2 + m - 1) / k * (2 * math.pi / w) ** ((1.0 + z) / k)
    return main + pref * tail


def wigert_odd_corollary(k: int, m: int, w: complex) -> complex:
    """Odd-k closed form at z = 2m-1 (1 <= m < (k+1)/2); exact where the
    classical odd-k result was only asymptotic."""
    if k <= 1 or k % 2 != 1:
        raise DomainError("k must be odd and > 1")
    if not 1 <= m < (k + 1) // 2:
        raise DomainError("m must satisfy 1 <= m < (k+1)/2")
    w = complex(w)
    z = 2 * m - 1
    main = -zeta_c(-z) / 2.0 + zeta_c(k - z) / w \
        + gamma_c((1.0 + z) / k) * zeta_c((1.0 + z) / k) \
        / (k * w ** ((1.0 + z) / k))
    W = 2 * math.pi * (2 * math.pi / w) ** (1.0 / k)
    tail = lbar(k, float(z), W)
    for j in range(1, (k - 1) // 2 + 1):
        ph = cmath.exp(1j * math.pi * j * (-k + 2 * m) / k)
        rot = cmath.exp(1j * math.pi * j / k)
        tail += ph * lbar(k, float(z), W * rot) \
            + ph.conjugate() * lbar(k, float(z), W * rot.conjugate())
    pref = (-1.0) ** ((k - 1) // 2 + m) / k * (2 * math.pi / w) ** (2.0 * m / k)
    return main + pref * tail


# ----------------------------------------------------------------------
# Partial fractions and the exact cosine integral
# ----------------------------------------------------------------------

def partial_fraction_check(k: int, a: complex, t: float) -> float:
    """Max residual of the rotated partial-fraction decompositions of
    t^k/(t^{2k} + a^{2k}) (both the raw and the paired forms)."""
    a = complex(a)
    t = float(t)
    lhs = t ** k / (t ** (2 * k) + a ** (2 * k))
    z4k = cmath.exp(1j * math.pi / (2 * k))
    resids = []
    # raw decomposition over the k root pairs
    total = 0.0 + 0.0j
    for j in range(1, k + 1):
        c = a ** (1 - k) * z4k ** ((1 - k) * (2 * j - 1)) / (2 * k)
        if k % 2 == 1:
            total += 2 * t * c / (t * t - (a * z4k ** (2 * j - 1)) ** 2)
        else:
            total += 2 * a * c * z4k ** (2 * j - 1) \
                / (t * t - (a * z4k ** (2 * j - 1)) ** 2)
    resids.append(abs(lhs - total))
    # paired (conjugate-symmetric) form
    if k % 2 == 1:
        acc = 1.0 / (t * t + a * a)
        for j in range(1, (k - 1) // 2 + 1):
            Bj = z4k ** ((1 - k) * 2 * j)
            acc += Bj / (t * t + (a * z4k ** (2 * j)) ** 2)
            acc += Bj.conjugate() / (t * t + (a * z4k ** (-2 * j)) ** 2)
        paired = (-1.0) ** ((k - 1) // 2) * a ** (1 - k) * t / k * acc
    else:
        acc = 0.0 + 0.0j
        for j in range(1, k // 2 + 1):
            Aj = z4k ** ((2 - k) * (2 * j - 1))
            acc += Aj / (t * t + (a * z4k ** (2 * j - 1)) ** 2)
            acc += Aj.conjugate() / (t * t + (a * z4k ** (-(2 * j - 1))) ** 2)
        paired = (-1.0) ** (k // 2 - 1) * a ** (2 - k) / k * acc
    resids.append(abs(lhs - paired))
    return max(resids)


def exact_cosine_integral(k: int, m: int, a: float) -> complex:
    """int_0^inf t^{k+2m} cos t/(t^{2k}+a^{2k}) dt in closed form
    (k even, 0 <= 2m < k, a > 0): a finite sum of rotated exponentials."""
    if k % 2 != 0 or k < 2:
        raise DomainError("k must be even")
    if not 0 <= 2 * m < k:
        raise DomainError("need 0 <= 2m < k")
    if a <= 0:
        raise DomainError("a > 0 required")
    total = 0.0 + 0.0j
    for j in range(1, k // 2 + 1):
        ph = 1j * math.pi / (2 * k) * (1 - k + 2 * m) * (2 * j - 1)
        rot = cmath.exp(1j * math.pi * (2 * j - 1) / (2 * k))
        total += cmath.exp(ph - a * rot) + cmath.exp(-ph - a * rot.conjugate())
    return math.pi * (-1.0) ** (k // 2 + m - 1) / (2 * k) \
        * a ** (2 * m - k + 1) * total
