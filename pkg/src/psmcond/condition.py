"""Structured and unstructured condition numbers of simple zeros.

The structured number ``kappa_S`` lets each block of ``[[-A, B], [C, D]]``
move coefficient by coefficient, with ``||dA_i|| <= a_i`` and so on. The
unstructured number ``kappa_U`` lets each coefficient ``P_i`` of the
assembled polynomial move with ``||dP_i|| <= p_i``.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field

import numpy as np

from .eigensolve import SimpleZero
from .errors import NotMinimal, NotSimple
from .polymat import PolyMatrix, eval_derivative
from .psm import PolySystemMatrix, assemble, transfer_derivative


@dataclass(frozen=True)
class WeightScheme:
    """Per-degree caps for the block perturbations. An empty tuple is a zero block."""

    a: tuple[float, ...] = ()
    b: tuple[float, ...] = ()
    c: tuple[float, ...] = ()
    d: tuple[float, ...] = ()

    def __post_init__(self):
        for name in "abcd":
            vals = tuple(float(x) for x in getattr(self, name))
            if any(not x >= 0 for x in vals):
                raise ValueError(f"weights {name} must be nonnegative, got {vals}")
            object.__setattr__(self, name, vals)

    def block(self, name: str) -> tuple[float, ...]:
        return getattr(self, name.lower())

    @property
    def degree(self) -> int:
        return max(len(self.a), len(self.b), len(self.c), len(self.d)) - 1

    def to_dict(self) -> dict:
        return {k: list(v) for k, v in asdict(self).items()}

    @classmethod
    def from_dict(cls, data: dict) -> WeightScheme:
        return cls(**{k: tuple(data.get(k, ())) for k in "abcd"})


def weight_scheme_uniform(S: PolySystemMatrix) -> WeightScheme:
    """Weight 1 on every coefficient up to each block's degree."""
    return WeightScheme(*((1.0,) * (X.degree() + 1) for X in (S.A, S.B, S.C, S.D)))


def weight_scheme_relative(S: PolySystemMatrix) -> WeightScheme:
    """Weights equal to the spectral norms of the coefficients."""
    return WeightScheme(
        *(tuple(X.coeff_norms()[: X.degree() + 1]) for X in (S.A, S.B, S.C, S.D))
    )


def _horner_abs(weights: tuple[float, ...], r: float) -> float:
    out = 0.0
    for x in reversed(weights):
        out = out * r + x
    return out


def S_matrix(weights: WeightScheme, z: complex) -> np.ndarray:
    r = abs(z)
    return np.array(
        [
            [_horner_abs(weights.a, r), _horner_abs(weights.b, r)],
            [_horner_abs(weights.c, r), _horner_abs(weights.d, r)],
        ]
    )


def p_from_weights(weights: WeightScheme) -> list[float]:
    """Sharp unstructured caps: largest singular value of ``[[a_i, b_i], [c_i, d_i]]``."""

    def get(ws, i):
        return ws[i] if i < len(ws) else 0.0

    return [
        float(np.linalg.norm([[get(weights.a, i), get(weights.b, i)],
                              [get(weights.c, i), get(weights.d, i)]], 2))
        for i in range(weights.degree + 1)
    ]


def _require_simple(sz: SimpleZero) -> None:
    if not sz.K > sz.K_tol:
        raise NotSimple(
            f"lambda0={sz.lambda0:.6g}: K=|w^T P'(lambda0) v|={sz.K:.3e} <= tol={sz.K_tol:.3e}"
        )
    if not sz.sigma2_gap > sz.rank_tol:
        raise NotSimple(
            f"lambda0={sz.lambda0:.6g}: second smallest singular value of P(lambda0) "
            f"{sz.sigma2_gap:.3e} <= tol={sz.rank_tol:.3e}"
        )


def _require_minimal(sz: SimpleZero) -> None:
    m = sz.minimality
    if m is None:
        raise NotMinimal("no minimality report attached to the eigenpair")
    if not m.minimal:
        which = "sigma_col" if m.sigma_col <= m.tol else "sigma_row"
        raise NotMinimal(
            f"lambda0={sz.lambda0:.6g}: not minimal, {which}="
            f"{getattr(m, which):.3e} <= tol={m.tol:.3e}"
        )


def kappa_S(S: PolySystemMatrix, sz: SimpleZero, weights: WeightScheme) -> float:
    """Structured absolute condition number, from the partition of ``v`` and ``w``.

    Poles that coincide with the zero need no special handling: the partition
    blocks are the limits of ``A^{-1} B x`` and ``y^T C A^{-1}``.
    """
    _require_minimal(sz)
    _require_simple(sz)
    wn = np.array([np.linalg.norm(sz.w1), np.linalg.norm(sz.w2)])
    vn = np.array([np.linalg.norm(sz.v1), np.linalg.norm(sz.v2)])
    return float(wn @ S_matrix(weights, sz.lambda0) @ vn / sz.K)


def kappa_U(P: PolyMatrix, sz: SimpleZero, p) -> float:
    _require_simple(sz)
    r = abs(sz.lambda0)
    total = sum(pi * r**i for i, pi in enumerate(p))
    return float(np.linalg.norm(sz.w) * np.linalg.norm(sz.v) * total / sz.K)


@dataclass
class ConditionReport:
    lambda0: complex
    kappa_S: float
    kappa_U: float
    p: list[float]
    K: float
    S_at_lambda0: np.ndarray
    ratio: float
    scaled_kappa_S: float
    scaled_kappa_U: float
    scaled: bool
    marginal_minimality: bool = False
    warnings: list[str] = field(default_factory=list)

    CSV_FIELDS = ("lambda0_re", "lambda0_im", "kappa_S", "kappa_U", "ratio", "K")

    def csv_row(self, use_scaled: bool = False) -> dict:
        ks, ku = (
            (self.scaled_kappa_S, self.scaled_kappa_U) if use_scaled else (self.kappa_S, self.kappa_U)
        )
        return {
            "lambda0_re": self.lambda0.real,
            "lambda0_im": self.lambda0.imag,
            "kappa_S": ks,
            "kappa_U": ku,
            "ratio": self.ratio,
            "K": self.K,
        }

    def to_dict(self) -> dict:
        return {
            "lambda0": [self.lambda0.real, self.lambda0.imag],
            "kappa_S": self.kappa_S,
            "kappa_U": self.kappa_U,
            "p": list(self.p),
            "K": self.K,
            "S_at_lambda0": self.S_at_lambda0.tolist(),
            "ratio": self.ratio,
            "scaled_kappa_S": self.scaled_kappa_S,
            "scaled_kappa_U": self.scaled_kappa_U,
            "scaled": self.scaled,
            "marginal_minimality": self.marginal_minimality,
            "warnings": list(self.warnings),
        }


def analyze(S: PolySystemMatrix, sz: SimpleZero, weights: WeightScheme) -> ConditionReport:
    ks = kappa_S(S, sz, weights)
    p = p_from_weights(weights)
    ku = kappa_U(assemble(S), sz, p)
    r = abs(sz.lambda0)
    scaled = r > 0
    warnings = []
    marginal = bool(sz.minimality.marginal)
    if marginal:
        warnings.append("minimality singular values within 10x of the tolerance")
    if not scaled:
        warnings.append("lambda0 = 0: scaled values are unscaled")
    return ConditionReport(
        lambda0=complex(sz.lambda0),
        kappa_S=ks,
        kappa_U=ku,
        p=p,
        K=sz.K,
        S_at_lambda0=S_matrix(weights, sz.lambda0),
        ratio=ku / ks if ks > 0 else math.inf,
        scaled_kappa_S=ks / r if scaled else ks,
        scaled_kappa_U=ku / r if scaled else ku,
        scaled=scaled,
        marginal_minimality=marginal,
        warnings=warnings,
    )


def derivative_identity_residual(S: PolySystemMatrix, sz: SimpleZero) -> float:
    """Relative gap between ``w^T P'(l0) v`` and ``w2^T R'(l0) v2`` at a non-pole zero.

    ``R'`` is taken by central differences, so this is a test utility.
    """
    lam = sz.lambda0
    lhs = sz.w @ eval_derivative(assemble(S), lam) @ sz.v
    rhs = sz.w2 @ transfer_derivative(S, lam) @ sz.v2
    return float(abs(lhs - rhs) / max(1.0, abs(lhs)))


# name used by the public interface
lemma33_check = derivative_identity_residual
