"""Structured perturbations and measured eigenvalue drift."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .condition import WeightScheme, _require_minimal, _require_simple, kappa_S
from .eigensolve import SimpleZero, finite_eigenvalues, nearest_eigenvalue, refine_eigenvalue
from .errors import EigenvalueCollision, ShapeMismatch
from .polymat import PolyMatrix
from .psm import PolySystemMatrix, assemble

BLOCKS = "ABCD"


@dataclass(frozen=True)
class StructuredPerturbation:
    """Direction ``(dA, dB, dC, dD)``; the size ``epsilon`` is supplied at use."""

    dA: PolyMatrix
    dB: PolyMatrix
    dC: PolyMatrix
    dD: PolyMatrix

    def as_system(self) -> PolySystemMatrix:
        return PolySystemMatrix(self.dA, self.dB, self.dC, self.dD)

    def block(self, name: str) -> PolyMatrix:
        return getattr(self, "d" + name)

    def is_zero(self) -> bool:
        return all(self.block(name).is_zero() for name in BLOCKS)

    def feasible(self, weights: WeightScheme, slack: float = 1e-12) -> bool:
        for name in BLOCKS:
            ws = weights.block(name)
            norms = self.block(name).coeff_norms()
            for i, nrm in enumerate(norms):
                cap = ws[i] if i < len(ws) else 0.0
                if nrm > cap * (1 + slack) + slack:
                    return False
        return True


@dataclass(frozen=True)
class TrialResult:
    epsilon: float
    delta_lambda_abs: float
    predicted: float
    ratio_measured: float

    CSV_FIELDS = ("eps", "delta_lambda_abs", "predicted", "ratio_measured")

    def csv_row(self) -> dict:
        vals = (self.epsilon, self.delta_lambda_abs, self.predicted, self.ratio_measured)
        return dict(zip(self.CSV_FIELDS, vals))


def _block_shapes(S: PolySystemMatrix) -> dict[str, tuple[int, int]]:
    return {k: X.shape for k, X in S.blocks.items()}


def _rank_one(left: np.ndarray, right: np.ndarray) -> np.ndarray:
    """Unit-norm ``conj(left) @ right^H``, or zeros if a factor vanishes."""
    nl, nr = np.linalg.norm(left), np.linalg.norm(right)
    if nl == 0 or nr == 0:
        return np.zeros((left.size, right.size), dtype=complex)
    return np.outer(left.conj(), right.conj()) / (nl * nr)


def extremal_perturbation(
    S: PolySystemMatrix, sz: SimpleZero, weights: WeightScheme
) -> StructuredPerturbation:
    """Rank-one block perturbation for which ``|w^T dP(l0) v| / K == kappa_S``.

    Each coefficient is ``weight * mu**i`` times a unit rank-one matrix built
    from the partition of ``w`` and ``v``, with ``mu = conj(l0)/|l0|`` (0 at
    ``l0 = 0``). The factors are conjugated so every block contributes a
    positive real term to ``w^T dP(l0) v``.
    """
    _require_minimal(sz)
    _require_simple(sz)
    lam = sz.lambda0
    mu = 0.0 if lam == 0 else np.conj(lam) / abs(lam)
    dirs = {
        "A": -_rank_one(sz.w1, sz.v1),
        "B": _rank_one(sz.w1, sz.v2),
        "C": _rank_one(sz.w2, sz.v1),
        "D": _rank_one(sz.w2, sz.v2),
    }
    shapes = _block_shapes(S)
    out = {}
    for name in BLOCKS:
        ws = weights.block(name)
        if not ws:
            out[name] = PolyMatrix.zeros(*shapes[name])
            continue
        # mu**0 is 1 even when mu == 0
        out[name] = PolyMatrix([wt * (mu**i if i else 1.0) * dirs[name] for i, wt in enumerate(ws)])
    return StructuredPerturbation(out["A"], out["B"], out["C"], out["D"])


def random_perturbation(S: PolySystemMatrix, weights: WeightScheme, seed=None) -> StructuredPerturbation:
    """Random complex Gaussian coefficients rescaled to norm equal to their weight."""
    rng = np.random.default_rng(seed)
    shapes = _block_shapes(S)
    out = {}
    for name in BLOCKS:
        ws = weights.block(name)
        r, c = shapes[name]
        mats = []
        for wt in ws:
            G = rng.standard_normal((r, c)) + 1j * rng.standard_normal((r, c))
            mats.append(wt * G / np.linalg.norm(G, 2))
        out[name] = PolyMatrix(mats) if mats else PolyMatrix.zeros(r, c)
    return StructuredPerturbation(out["A"], out["B"], out["C"], out["D"])


def apply(S: PolySystemMatrix, dP: StructuredPerturbation, eps: float) -> PolySystemMatrix:
    """Blockwise ``A + eps*dA`` etc.; the assembled top-left block is ``-(A + eps*dA)``."""
    new = {}
    for name in BLOCKS:
        X, dX = S.blocks[name], dP.block(name)
        if X.shape != dX.shape:
            raise ShapeMismatch(f"perturbation block {name} has shape {dX.shape}, expected {X.shape}")
        new[name] = X + eps * dX
    return PolySystemMatrix(**new)


def first_order_quotient(S: PolySystemMatrix, dP: StructuredPerturbation, sz: SimpleZero) -> float:
    """``|w^T dP(l0) v| / K``, the predicted drift per unit ``eps``."""
    dPl = assemble(dP.as_system())(sz.lambda0)
    return float(abs(sz.w @ dPl @ sz.v) / sz.K)


def eigen_gap(S: PolySystemMatrix, lambda0: complex) -> float:
    """Distance from ``lambda0`` to the nearest other finite eigenvalue of ``P``."""
    lams = finite_eigenvalues(assemble(S))
    d = np.abs(lams - lambda0)
    d = d[d > 1e-8 * max(1.0, abs(lambda0))]
    return float(d.min()) if d.size else np.inf


def measure_shift(
    S: PolySystemMatrix,
    dP: StructuredPerturbation,
    sz: SimpleZero,
    eps: float,
    kappa: float | None = None,
    gap: float | None = None,
) -> TrialResult:
    if kappa is None:
        kappa = first_order_quotient(S, dP, sz)
    if eps == 0 or dP.is_zero():
        return TrialResult(float(eps), 0.0, 0.0, 0.0)
    if gap is None:
        gap = eigen_gap(S, sz.lambda0)
    Pe = assemble(apply(S, dP, eps))
    lam = refine_eigenvalue(Pe, nearest_eigenvalue(Pe, sz.lambda0))
    shift = abs(lam - sz.lambda0)
    if shift >= gap / 2:
        raise EigenvalueCollision(
            f"eps={eps:g}: shift {shift:.3e} is not below half the eigenvalue gap {gap:.3e}"
        )
    return TrialResult(float(eps), float(shift), float(eps * kappa), float(shift / eps))


@dataclass
class ValidationSummary:
    kappa_S: float
    trials: list[TrialResult]
    rel_errors: list[float]
    max_rel_error: float

    @property
    def slopes(self) -> list[float]:
        return [t.ratio_measured for t in self.trials]

    def to_dict(self) -> dict:
        return {
            "kappa_S": self.kappa_S,
            "slopes": self.slopes,
            "rel_errors": self.rel_errors,
            "max_rel_error": self.max_rel_error,
        }


def first_order_validate(
    S: PolySystemMatrix, sz: SimpleZero, weights: WeightScheme, eps_list
) -> ValidationSummary:
    """Measure the drift under the extremal perturbation for each ``eps``."""
    ks = kappa_S(S, sz, weights)
    dP = extremal_perturbation(S, sz, weights)
    gap = eigen_gap(S, sz.lambda0)
    trials = [measure_shift(S, dP, sz, eps, kappa=ks, gap=gap) for eps in eps_list]
    if ks == 0:
        errs = [0.0 if t.ratio_measured == 0 else np.inf for t in trials]
    else:
        errs = [abs(t.ratio_measured - ks) / ks for t in trials]
    return ValidationSummary(ks, trials, errs, max(errs) if errs else 0.0)
