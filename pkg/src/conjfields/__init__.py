"""Exact arithmetic for conjugation-invariant vector fields on SL(n)."""

from __future__ import annotations

__version__ = "0.1.0"

from .exact_core import ConjFieldsError, Jet2, NonInvertible, Rational
from .matrix_ring import SquareMatrix
from .sampling import SamplePlan, sample_direction, sample_slg
from .functions import I, J, beta_trace_monomial, RegularFunction, beta, chi, tensor_coefficient
from .fields import (FieldMapSpec, apply_field, differential, eval_map, is_flat, make_phi,
                     make_psi, second_order, sharp_commutator, star_commutator)
from .class_algebra import (BorelForm, ClassForm, DegreeOverflow, NotSymmetric, WeightMismatch,
                            reconstruct_borel, restrict_to_torus, to_basis)
from .operators import (NormalizationError, apply_operator, casimir, kernel_scan, rtilde_probe,
                        separation_operator, weyl_torus_operator)
from .witt import CircleField, circle_commutator, odd_field, even_field

__all__ = [
    "BorelForm", "CircleField", "ClassForm", "ConjFieldsError", "DegreeOverflow", "FieldMapSpec",
    "I", "J", "beta_trace_monomial", "Jet2", "NonInvertible", "NormalizationError", "NotSymmetric", "Rational",
    "RegularFunction", "SamplePlan", "SquareMatrix", "WeightMismatch", "apply_field",
    "apply_operator", "beta", "casimir", "chi", "circle_commutator", "differential", "eval_map",
    "tensor_coefficient", "is_flat", "odd_field", "kernel_scan", "make_phi", "make_psi", "even_field", "reconstruct_borel",
    "restrict_to_torus", "rtilde_probe", "sample_direction", "sample_slg", "second_order",
    "separation_operator", "sharp_commutator", "star_commutator", "to_basis",
    "weyl_torus_operator",
]
