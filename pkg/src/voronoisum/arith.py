"""Generalized divisor functions and their sieved tables.

sigma_zk(k, z, n) sums d^z over divisors d with d^k | n; s_zk is the
companion sum over factorizations d1^k * d2 = n weighting d2^((1+z)/k - 1).
Tables are dense complex arrays built by sieving over d (one complex
power per d, reused across all multiples).
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field

import numpy as np

from .specialfn import zeta_c

__all__ = ["DivisorTable", "sigma_zk", "s_zk", "build_table",
           "dirichlet_partial", "dirichlet_series_sigma", "dirichlet_series_s"]

TABLE_BYTE_BUDGET = 2 << 30  # ~2 GiB of complex128 pairs


def sigma_zk(k: int, z: complex, n: int) -> complex:
    """sigma_z^(k)(n) = sum of d^z over d with d^k | n (principal d^z)."""
    if n < 1:
        raise ValueError("n must be >= 1")
    z = complex(z)
    total = 0.0 + 0.0j
    d = 1
    while d ** k <= n:
        if n % (d ** k) == 0:
            total += complex(d) ** z
        d += 1
    return total


def s_zk(k: int, z: complex, n: int) -> complex:
    """S_z^(k)(n) = sum over d1^k * d2 = n of d2^((1+z)/k - 1)."""
    if n < 1:
        raise ValueError("n must be >= 1")
    e = (1.0 + complex(z)) / k - 1.0
    total = 0.0 + 0.0j
    d1 = 1
    while d1 ** k <= n:
        if n % (d1 ** k) == 0:
            total += complex(n // d1 ** k) ** e
        d1 += 1
    return total


@dataclass
class DivisorTable:
    """Sieved sigma_z^(k) and S_z^(k) values for 1 <= n <= limit.

    Index 0 is unused padding so that table.sigma[n] is the value at n.
    """

    k: int
    z: complex
    limit: int
    sigma: np.ndarray = field(repr=False)
    s_table: np.ndarray = field(repr=False)

    def to_csv(self, fh) -> None:
        w = csv.writer(fh)
        w.writerow(["n", "re_sigma", "im_sigma", "re_s", "im_s"])
        for n in range(1, self.limit + 1):
            sg, sv = complex(self.sigma[n]), complex(self.s_table[n])
            w.writerow([n, repr(sg.real), repr(sg.imag), repr(sv.real), repr(sv.imag)])

    def to_csv_string(self) -> str:
        buf = io.StringIO()
        self.to_csv(buf)
        return buf.getvalue()


def build_table(k: int, z: complex, limit: int) -> DivisorTable:
    """Sieve both divisor functions up to `limit` in O(sum limit/d^k)."""
    if limit < 1:
        raise ValueError("limit must be >= 1")
    if 32 * (limit + 1) > TABLE_BYTE_BUDGET:
        raise MemoryError(f"table of size {limit} exceeds the byte budget")
    z = complex(z)
    sigma = np.zeros(limit + 1, dtype=np.complex128)
    s_tab = np.zeros(limit + 1, dtype=np.complex128)
    e = (1.0 + z) / k - 1.0
    d = 1
    while d ** k <= limit:
        step = d ** k
        sigma[step::step] += complex(d) ** z
        m = limit // step
        s_tab[step::step] += np.arange(1, m + 1, dtype=np.complex128) ** e
        d += 1
    return DivisorTable(k=k, z=z, limit=limit, sigma=sigma, s_table=s_tab)


def dirichlet_partial(k: int, z: complex, s: complex, N: int,
                      which: str = "sigma",
                      table: DivisorTable | None = None) -> complex:
    """Partial Dirichlet sum sum_{n<=N} a(n) n^{-s} for a in {sigma, S}."""
    if table is None or table.limit < N or table.k != k or table.z != complex(z):
        table = build_table(k, z, N)
    coeff = table.sigma if which == "sigma" else table.s_table
    n = np.arange(1, N + 1, dtype=np.complex128)
    return complex(np.sum(coeff[1:N + 1] * n ** (-complex(s))))


def dirichlet_series_sigma(k: int, z: complex, s: complex) -> complex:
    """zeta(s) zeta(ks - z), the closed form of the sigma series."""
    return zeta_c(s) * zeta_c(k * complex(s) - complex(z))


def dirichlet_series_s(k: int, z: complex, s: complex) -> complex:
    """zeta(ks) zeta(s + 1 - (1+z)/k), the closed form of the S series."""
    s = complex(s)
    return zeta_c(k * s) * zeta_c(s + 1.0 - (1.0 + complex(z)) / k)
