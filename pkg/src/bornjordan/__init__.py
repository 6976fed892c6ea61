"""Born-Jordan and Weyl quantization of polynomial Hamiltonians in one degree of freedom.

Exact noncommutative algebra (:mod:`.algebra`, :mod:`.quantize`, :mod:`.verify`)
and truncated matrix mechanics (:mod:`.matrixrep`, :mod:`.dynamics`).
"""

from .algebra import (HBAR, I, Gaussian, NCPoly, Scalar, commutator, cyclic_derivative,
                      equals, formal_adjoint, format_poly, is_central, mul, normal_form, p, q)
from .quantize import (RULES, ClassicalPoly, Monomial, average_all_orderings, bj_quantize,
                       bj_quantize_qsplit, classical_derivative, ordering_quantize, quantize,
                       weyl_quantize)

__version__ = "0.1.0"

__all__ = [
    "HBAR", "I", "Gaussian", "NCPoly", "Scalar", "commutator", "cyclic_derivative", "equals",
    "formal_adjoint", "format_poly", "is_central", "mul", "normal_form", "p", "q",
    "RULES", "ClassicalPoly", "Monomial", "average_all_orderings", "bj_quantize",
    "bj_quantize_qsplit", "classical_derivative", "ordering_quantize", "quantize",
    "weyl_quantize",
]
