"""Double precision and mpmath numerics used to check the exact pipeline."""
from ._kernels import BACKEND
from .poincare import poincare_displacement, richardson_slope, simulate
from .quadrature import oracle_comparison, quadrature_I
from .zeros import closed_form_zeros, isolate_zeros, radical_zeros

__all__ = ["BACKEND", "closed_form_zeros", "isolate_zeros", "oracle_comparison", "poincare_displacement",
           "quadrature_I", "radical_zeros", "richardson_slope", "simulate"]
