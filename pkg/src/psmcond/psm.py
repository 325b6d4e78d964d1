"""Polynomial system matrices ``[[-A, B], [C, D]]`` and their transfer functions."""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np
import scipy.linalg as sla

from .errors import ParseError, PoleOrSingular, ShapeMismatch
from .polymat import PolyMatrix, block_poly, eval_derivative

EPS = np.finfo(float).eps


@dataclass(frozen=True)
class PolySystemMatrix:
    A: PolyMatrix
    B: PolyMatrix
    C: PolyMatrix
    D: PolyMatrix

    def __post_init__(self):
        n, p = self.A.rows, self.D.rows
        expected = {"A": (n, n), "B": (n, p), "C": (p, n), "D": (p, p)}
        for name, shape in expected.items():
            got = getattr(self, name).shape
            if got != shape:
                raise ShapeMismatch(f"block {name} has shape {got}, expected {shape}")

    @property
    def n(self) -> int:
        return self.A.rows

    @property
    def p(self) -> int:
        return self.D.rows

    @property
    def blocks(self) -> dict[str, PolyMatrix]:
        return {"A": self.A, "B": self.B, "C": self.C, "D": self.D}

    def check_regular(self) -> None:
        """Raise ``PoleOrSingular`` if ``A`` or the assembled matrix looks singular."""
        if not is_regular(self.A):
            raise PoleOrSingular("A(lambda) is numerically singular at every test point")
        if not is_regular(assemble(self)):
            raise PoleOrSingular("P(lambda) is numerically singular at every test point")

    def to_dict(self) -> dict:
        return {k: v.to_dict() for k, v in self.blocks.items()}

    @classmethod
    def from_dict(cls, data: dict) -> PolySystemMatrix:
        try:
            return cls(**{k: PolyMatrix.from_dict(data[k]) for k in "ABCD"})
        except (KeyError, TypeError, ValueError) as exc:
            raise ParseError(f"invalid polynomial system matrix: {exc}") from exc

    @classmethod
    def load(cls, path) -> PolySystemMatrix:
        try:
            data = json.loads(Path(path).read_text())
        except (OSError, json.JSONDecodeError) as exc:
            raise ParseError(f"cannot read {path}: {exc}") from exc
        return cls.from_dict(data)

    def dump(self, path) -> None:
        Path(path).write_text(json.dumps(self.to_dict()))


@dataclass(frozen=True)
class MinimalityReport:
    sigma_col: float
    sigma_row: float
    minimal: bool
    tol: float

    @property
    def marginal(self) -> bool:
        """Minimal, but one of the rank tests is within a factor 10 of ``tol``."""
        return self.minimal and min(self.sigma_col, self.sigma_row) <= 10 * self.tol


def assemble(S: PolySystemMatrix) -> PolyMatrix:
    """The ``(n+p) x (n+p)`` matrix polynomial ``[[-A, B], [C, D]]``."""
    return block_poly([[-S.A, S.B], [S.C, S.D]])


def _rank_tol(M: np.ndarray) -> float:
    return max(M.shape) * EPS * max(np.linalg.norm(M, 2), 1.0)


def minimality_at(S: PolySystemMatrix, z: complex, tol: float | None = None) -> MinimalityReport:
    """Rank tests of ``[-A(z); C(z)]`` and ``[A(z), B(z)]``.

    With ``tol=None`` the threshold is ``(n+p) * eps * max(||M||, 1)`` taken
    over the two tested matrices.
    """
    Az = S.A(z)
    col = np.vstack([-Az, S.C(z)])
    row = np.hstack([Az, S.B(z)])
    s_col = float(np.linalg.svd(col, compute_uv=False)[-1])
    s_row = float(np.linalg.svd(row, compute_uv=False)[-1])
    if tol is None:
        tol = max(_rank_tol(col), _rank_tol(row))
    return MinimalityReport(s_col, s_row, s_col > tol and s_row > tol, float(tol))


def _solve_A(S: PolySystemMatrix, z: complex, rhs: np.ndarray, tol: float | None) -> np.ndarray:
    Az = S.A(z)
    smin = float(np.linalg.svd(Az, compute_uv=False)[-1])
    if tol is None:
        tol = _rank_tol(np.hstack([Az, S.B(z)]))
    if smin <= tol:
        raise PoleOrSingular(f"A({z}) is numerically singular (sigma_min={smin:.3e} <= tol={tol:.3e})")
    return sla.lu_solve(sla.lu_factor(Az), rhs)


def transfer_eval(S: PolySystemMatrix, z: complex, tol: float | None = None) -> np.ndarray:
    """``R(z) = D(z) + C(z) A(z)^{-1} B(z)`` by an LU solve."""
    return S.D(z) + S.C(z) @ _solve_A(S, z, S.B(z), tol)


def transfer_derivative(S: PolySystemMatrix, z: complex, h: float | None = None) -> np.ndarray:
    """Central-difference approximation of ``R'(z)``."""
    if h is None:
        h = 1e-6 * max(1.0, abs(z))
    return (transfer_eval(S, z + h) - transfer_eval(S, z - h)) / (2 * h)


def transfer_derivative_exact(S: PolySystemMatrix, z: complex) -> np.ndarray:
    """``R'(z)`` from the product rule, for ``z`` not an eigenvalue of ``A``."""
    Az_inv_B = _solve_A(S, z, S.B(z), None)
    CAinv = _solve_A(S, z, np.eye(S.n), None)
    CAinv = S.C(z) @ CAinv
    dA, dB, dC = (eval_derivative(X, z) for X in (S.A, S.B, S.C))
    return (
        eval_derivative(S.D, z)
        + dC @ Az_inv_B
        + CAinv @ dB
        - CAinv @ dA @ Az_inv_B
    )


def is_regular(P: PolyMatrix, seed: int = 0, points: int = 5) -> bool:
    """Probabilistic regularity test: ``P`` is nonsingular at some random point."""
    rng = np.random.default_rng(seed)
    zs = rng.standard_normal(points) + 1j * rng.standard_normal(points)
    for z in zs:
        M = P(z)
        s = np.linalg.svd(M, compute_uv=False)
        if s[-1] > 1e3 * _rank_tol(M):
            return True
    return False
