"""Generalized divisor sums, their summation kernels, and the exact
Lambert/Voronoi identities connecting them.

The package evaluates sigma_z^(k)(n) (divisors whose k-th power divides n,
weighted d^z) and its companion S_z^(k)(n), the two kernel special
functions behind their summation formulas, and verifies every identity
numerically through independent computational routes.
"""

from .arith import DivisorTable, build_table, dirichlet_partial, s_zk, sigma_zk
from .combinat import (elem_sym, lemma45_lhs, meijer_params_h, meijer_params_k,
                       stirling1_signed, stirling2)
from .kernels import (KernelParams, KernelValue, TabulatedKernel, auto_kernel,
                      h_asymptotic, h_from_k_combination, h_k1_closed_form,
                      h_quadrature, h_series, k_contour, k_real, k_series,
                      ode_residual)
from .lambert import (LambertConfig, exact_cosine_integral, lambert_lhs,
                      partial_fraction_check, wigert_even_corollary,
                      wigert_odd_corollary, wigert_rhs)
from .quadrature import (ContourSpec, QuadratureConfig, integrate_finite,
                         integrate_osc_tail, integrate_vertical_line)
from .specialfn import (BesselOrder, BTransformInput, b_transform, bessel,
                        digamma_c, gamma_c, hyp1f2, zeta_c)
from .summation import (TestFunctionSpec, VerificationReport, VoronoiConfig,
                        classical_voronoi_check, voronoi_lhs, voronoi_rhs,
                        voronoi_schwartz)

__version__ = "1.0.0"

__all__ = [
    "DivisorTable", "build_table", "dirichlet_partial", "s_zk", "sigma_zk",
    "elem_sym", "lemma45_lhs", "meijer_params_h", "meijer_params_k",
    "stirling1_signed", "stirling2",
    "KernelParams", "KernelValue", "TabulatedKernel", "auto_kernel",
    "h_asymptotic", "h_from_k_combination", "h_k1_closed_form",
    "h_quadrature", "h_series", "k_contour", "k_real", "k_series",
    "ode_residual",
    "LambertConfig", "exact_cosine_integral", "lambert_lhs",
    "partial_fraction_check", "wigert_even_corollary",
    "wigert_odd_corollary", "wigert_rhs",
    "ContourSpec", "QuadratureConfig", "integrate_finite",
    "integrate_osc_tail", "integrate_vertical_line",
    "BesselOrder", "BTransformInput", "b_transform", "bessel",
    "digamma_c", "gamma_c", "hyp1f2", "zeta_c",
    "TestFunctionSpec", "VerificationReport", "VoronoiConfig",
    "classical_voronoi_check", "voronoi_lhs", "voronoi_rhs",
    "voronoi_schwartz",
    "__version__",
]
