"""Exact computations for a Z2 x Z2 graded color superalgebra.

Submodules: ``grading``, ``scalars``, ``color_algebra``, ``enveloping``,
``verma``, ``singular``, ``grassmann_calc``, ``coset_realization`` and
``cli``.
"""

from .color_algebra import bracket, check_axioms, default_table
from .coset_realization import DiffOperator, WeightData, pi_R, realize_singular, rewrite_in_psi_theta
from .enveloping import straighten
from .grading import Degree, sign
from .grassmann_calc import SuperFunction, change_chart, derive, verify_grassmann_realization
from .scalars import Scalar
from .singular import classify_singular_symbolic, find_singular_numeric, is_irreducible
from .verma import VermaVector, act, ket

__version__ = "0.1.0"

__all__ = [
    "Degree", "sign", "Scalar", "bracket", "check_axioms", "default_table", "straighten",
    "VermaVector", "act", "ket", "find_singular_numeric", "classify_singular_symbolic",
    "is_irreducible", "SuperFunction", "derive", "change_chart", "verify_grassmann_realization",
    "DiffOperator", "WeightData", "pi_R", "realize_singular", "rewrite_in_psi_theta",
]
