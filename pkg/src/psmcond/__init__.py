"""Condition numbers of simple zeros of rational matrices given by polynomial system matrices."""

from .condition import (
    ConditionReport,
    WeightScheme,
    analyze,
    kappa_S,
    kappa_U,
    derivative_identity_residual,
    lemma33_check,
    p_from_weights,
    S_matrix,
    weight_scheme_relative,
    weight_scheme_uniform,
)
from .eigensolve import SimpleZero, companion_pencil, eigenpairs, nearest_eigenvalue, system_zeros
from .models import ModelSpec, build, data_only_weights
from .perturb import (
    StructuredPerturbation,
    apply,
    extremal_perturbation,
    first_order_validate,
    measure_shift,
    random_perturbation,
)
from .polymat import PolyMatrix, eval_derivative, eval_poly
from .psm import MinimalityReport, PolySystemMatrix, assemble, minimality_at, transfer_eval

__all__ = [name for name in dir() if not name.startswith("_")]
