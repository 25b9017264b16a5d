"""Exact combinatorics: Stirling numbers, elementary symmetric polynomials,
and the Meijer-G parameter vectors of the two divisor kernels.

Everything here is exact whenever the inputs are exact: the routines use
generic arithmetic, so they accept floats/complex for numerics and
``fractions.Fraction`` or sympy numbers when an identity is to be checked
in exact rational-complex arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

STIRLING_MAX_N = 64


class CombinatorialRangeError(ValueError):
    """Argument outside the supported exact-table range."""


@lru_cache(maxsize=None)
def _stirling2_rows(nmax: int):
    rows = [[1]]  # S(0,0)=1
    for n in range(1, nmax + 1):
        prev = rows[-1]
        row = [0] * (n + 1)
        for m in range(1, n + 1):
            row[m] = m * (prev[m] if m < len(prev) else 0) + prev[m - 1]
        rows.append(row)
    return rows


@lru_cache(maxsize=None)
def _stirling1_rows(nmax: int):
    # signed: s(n+1, m) = s(n, m-1) - n*s(n, m)
    rows = [[1]]
    for n in range(1, nmax + 1):
        prev = rows[-1]
        row = [0] * (n + 1)
        for m in range(1, n + 1):
            row[m] = (prev[m - 1] if m - 1 < len(prev) else 0) \
                - (n - 1) * (prev[m] if m < len(prev) else 0)
        rows.append(row)
    return rows


def _warm_tables() -> None:
    """Build the memo tables at import; afterwards they are read-only,
    so concurrent use needs no locking."""
    _stirling2_rows(STIRLING_MAX_N)
    _stirling1_rows(STIRLING_MAX_N)


def stirling2(n: int, m: int) -> int:
    """Stirling number of the second kind S(n, m); S(0,0)=1, S(n,m)=0 for n<m."""
    if n < 0 or m < 0:
        raise CombinatorialRangeError("stirling2 requires n, m >= 0")
    if n > STIRLING_MAX_N:
        raise CombinatorialRangeError(f"stirling2 table capped at n={STIRLING_MAX_N}")
    if m > n:
        return 0
    return _stirling2_rows(STIRLING_MAX_N)[n][m]


def stirling1_signed(n: int, m: int) -> int:
    """Signed Stirling number of the first kind s(n, m)."""
    if n < 0 or m < 0:
        raise CombinatorialRangeError("stirling1_signed requires n, m >= 0")
    if n > STIRLING_MAX_N:
        raise CombinatorialRangeError(f"stirling1 table capped at n={STIRLING_MAX_N}")
    if m > n:
        return 0
    return _stirling1_rows(STIRLING_MAX_N)[n][m]


@dataclass(frozen=True)
class SymbolMultiset:
    """The multiset X_n = {x_1, .., x_n}; operations are order-insensitive."""

    elements: tuple

    def __post_init__(self):
        if len(self.elements) < 1:
            raise CombinatorialRangeError("SymbolMultiset needs n >= 1 elements")

    def __len__(self):
        return len(self.elements)


def elem_sym(x, ell: int):
    """Elementary symmetric polynomial e_ell of the given values.

    Uses the product recurrence (coefficients of prod(1 + x_j t)), never
    subset enumeration, so it stays exact for Fraction/sympy inputs and
    stable for n well beyond 20.
    """
    elements = x.elements if isinstance(x, SymbolMultiset) else tuple(x)
    n = len(elements)
    if ell < 0 or ell > n:
        raise CombinatorialRangeError(f"elem_sym needs 0 <= ell <= {n}, got {ell}")
    coeffs = [1] + [0] * ell  # track only degrees <= ell
    for xj in elements:
        upper = min(ell, len(coeffs) - 1)
        for d in range(upper, 0, -1):
            coeffs[d] = coeffs[d] + xj * coeffs[d - 1]
    return coeffs[ell]


def _halves(k: int, z):
    """(1+z)/(2k) in arithmetic generic over the type of z."""
    if isinstance(z, (int, Fraction)):
        return (1 + Fraction(z)) / (2 * k)
    return (1 + z) / (2 * k)


@dataclass(frozen=True)
class MeijerParamsH:
    """Parameter vector b_1..b_{2k+2} of the cosine-cosine kernel's G-function."""

    k: int
    z: object
    b: tuple

    @property
    def pole_count(self) -> int:
        return self.k + 1


@dataclass(frozen=True)
class MeijerParamsK:
    """Parameter vector b'_1..b'_{2k+2} of the companion kernel's G-function."""

    k: int
    z: object
    bprime: tuple

    @property
    def pole_count(self) -> int:
        return self.k + 2


def meijer_params_h(k: int, z) -> MeijerParamsH:
    """Exact b-vector: (j-1)/k for j<=k, 1/2-(1+z)/2k, 2+(3-2j)/2k, 1-(1+z)/2k."""
    if k < 1:
        raise CombinatorialRangeError("k must be a positive integer")
    h = _halves(k, z)
    b = [Fraction(j - 1, k) for j in range(1, k + 1)]
    b.append(Fraction(1, 2) - h)
    b.extend(2 + Fraction(3 - 2 * j, 2 * k) for j in range(k + 2, 2 * k + 2))
    b.append(1 - h)
    return MeijerParamsH(k, z, tuple(b))


def meijer_params_k(k: int, z) -> MeijerParamsK:
    """Exact b'-vector: (j-1)/k, (k-1-z)/2k, (2k-1-z)/2k, (4k-2j+5)/2k."""
    if k < 1:
        raise CombinatorialRangeError("k must be a positive integer")
    h = _halves(k, z)
    b = [Fraction(j - 1, k) for j in range(1, k + 1)]
    b.append(Fraction(1, 2) - h)          # (k-1-z)/(2k) = 1/2 - (1+z)/(2k)
    b.append(1 - h)                       # (2k-1-z)/(2k) = 1 - (1+z)/(2k)
    b.extend(Fraction(4 * k - 2 * j + 5, 2 * k) for j in range(k + 3, 2 * k + 3))
    return MeijerParamsK(k, z, tuple(b))


def lemma45_lhs(k: int, z, m: int):
    """Sum_{j=0}^{2k+2-m} (-2k)^j e_j(X_{2k+2}) S(2k+2-j, m).

    X_{2k+2} is the kernel b-vector.  Collapses to the four-case closed
    form 1 / (2z+k+3) / (z+1)(z+k+1) / 0 that supplies the coefficients
    of the order-(2k+2) differential equation.
    """
    if not 1 <= m <= 2 * k + 2:
        raise CombinatorialRangeError("m must lie in [1, 2k+2]")
    b = meijer_params_h(k, z).b
    total = 0
    for j in range(0, 2 * k + 2 - m + 1):
        ej = elem_sym(b, j)
        total = total + ((-2 * k) ** j) * ej * stirling2(2 * k + 2 - j, m)
    return total


def lemma45_relative_residual(k: int, z) -> float:
    """Max over m of |lemma45_lhs - closed form| / (intermediate term scale).

    The identity is exact; in floating point the zero rows cancel large
    intermediates, so residuals are meaningful only relative to the
    largest term magnitude entering each row's sum.
    """
    b = meijer_params_h(k, z).b
    worst = 0.0
    closed = {2 * k + 2: 1, 2 * k + 1: 2 * z + k + 3, 2 * k: (z + 1) * (z + k + 1)}
    for m in range(1, 2 * k + 3):
        total = 0
        scale = 0.0
        for j in range(0, 2 * k + 2 - m + 1):
            term = ((-2 * k) ** j) * elem_sym(b, j) * stirling2(2 * k + 2 - j, m)
            total = total + term
            scale = max(scale, abs(complex(term)))
        want = closed.get(m, 0)
        resid = abs(complex(total - want)) / max(scale, 1.0)
        worst = max(worst, resid)
    return worst


def ode_coefficients(k: int, z):
    """Coefficients (c_{2k+2}, c_{2k+1}, c_{2k}, c_0) of the kernel ODE

    x^2 w^(2k+2) + (2z+k+3) x w^(2k+1) + (z+1)(z+k+1) w^(2k) + (-1)^k k^2 w = 0.
    """
    return (1, 2 * z + k + 3, (z + 1) * (z + k + 1), (-1) ** k * k * k)


def vanishing_factor(k: int, z, n: int):
    """The factor of prod_j (1 - (2k/n) b_j) that vanishes identically.

    For odd n = 2l-1 <= 2k-1 this is 1 - (2k/n) b_{2k-l+2}; for even
    n = 2l <= 2k-2 it is 1 - (2k/n) b_{l+1}.  Exactly zero for all z.
    """
    b = meijer_params_h(k, z).b
    if n % 2 == 1:
        ell = (n + 1) // 2
        if not 1 <= ell <= k:
            raise CombinatorialRangeError("odd n must satisfy n <= 2k-1")
        idx = 2 * k - ell + 2
    else:
        ell = n // 2
        if not 1 <= ell <= k - 1:
            raise CombinatorialRangeError("even n must satisfy n <= 2k-2")
        idx = ell + 1
    return 1 - Fraction(2 * k, n) * b[idx - 1]


_warm_tables()
