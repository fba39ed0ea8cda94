"""Abelian integrals for planar centers whose singular set is a union of lines.

The exact pipeline works over the rationals; ``abelian_lines.numeric`` holds
the floating point checks (quadrature, zero isolation, Poincare map).
"""
from .abelian import (ClosedForm, LineConfig, Perturbation, clear_poles, closed_form,
                      generic_perturbation, integrand, structure_degrees, to_radical_function)
from .algebra import Poly1, Poly2, parse_rat, set_precision
from .bounds import (bound_report, compare_known, config_invariants, cor42_bound, max_split_bound,
                     thm11_bound)
from .errors import (AbelianLinesError, ConfigError, DuplicateRoot, InvalidExponent, NumericFailure,
                     ZeroLine)
from .radical import RadicalFunction, derivation_division, zero_bound
from .trig import RadVal, TrigPoly, base_one_line, base_two_line, line_integral

__version__ = "0.1.0"

__all__ = [
    "AbelianLinesError", "ClosedForm", "ConfigError", "DuplicateRoot", "InvalidExponent", "LineConfig",
    "NumericFailure", "Perturbation", "Poly1", "Poly2", "RadVal", "RadicalFunction", "TrigPoly",
    "ZeroLine", "base_one_line", "base_two_line", "bound_report", "clear_poles", "closed_form",
    "compare_known", "config_invariants", "cor42_bound", "derivation_division", "generic_perturbation",
    "integrand", "line_integral", "max_split_bound", "parse_rat", "set_precision", "structure_degrees",
    "thm11_bound", "to_radical_function", "zero_bound",
]
