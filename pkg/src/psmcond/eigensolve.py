"""Finite eigenvalues and eigenvectors of regular matrix polynomials.

Eigenvalues come from QZ on the first companion pencil; the eigenvectors are
then recomputed from an SVD of ``P(lambda)`` at each eigenvalue. Left
eigenvectors follow the transpose convention ``w.T @ P(lambda0) == 0``.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np
import scipy.linalg as sla

from .errors import BackendFailure, DegreeZero, NoFiniteEigenvalues
from .polymat import PolyMatrix, eval_derivative
from .psm import MinimalityReport, PolySystemMatrix, assemble, minimality_at

EPS = np.finfo(float).eps
INF_CUTOFF = 1.0 / np.sqrt(EPS)


@dataclass(frozen=True)
class SimpleZero:
    """An eigenvalue of ``P`` with unit right/left null vectors.

    ``n`` is the size of the ``A`` block, used to split ``v`` and ``w`` into
    the parts that pair with the state (``v1``, ``w1``) and with the transfer
    function (``v2``, ``w2``).
    """

    lambda0: complex
    v: np.ndarray
    w: np.ndarray
    K: float
    sigma_min: float
    sigma2_gap: float
    scale: float
    K_magnitude: float
    n: int = 0
    minimality: MinimalityReport | None = None

    @property
    def v1(self) -> np.ndarray:
        return self.v[: self.n]

    @property
    def v2(self) -> np.ndarray:
        return self.v[self.n :]

    @property
    def w1(self) -> np.ndarray:
        return self.w[: self.n]

    @property
    def w2(self) -> np.ndarray:
        return self.w[self.n :]

    @property
    def K_tol(self) -> float:
        """Rounding level of ``w.T P'(l0) v``; smaller ``K`` counts as zero."""
        return 1e3 * EPS * self.K_magnitude

    @property
    def rank_tol(self) -> float:
        return 1e-10 * self.scale

    @property
    def simple(self) -> bool:
        return self.K > self.K_tol and self.sigma2_gap > self.rank_tol

    @property
    def minimal(self) -> bool:
        return self.minimality is not None and self.minimality.minimal


def poly_scale(P: PolyMatrix, z: complex) -> float:
    """``sum_i ||P_i|| * max(1, |z|)**i``: size of ``P`` near ``z``."""
    r = max(1.0, abs(z))
    return float(sum(nrm * r**i for i, nrm in enumerate(P.coeff_norms())))


def companion_pencil(P: PolyMatrix) -> tuple[np.ndarray, np.ndarray]:
    """First companion form ``lambda * M1 + M0`` of ``P``.

    ``M1 = blockdiag(P_d, I, ..., I)``; ``M0`` has first block row
    ``[P_{d-1}, ..., P_0]`` and ``-I`` on the block subdiagonal.
    """
    d = P.degree()
    if d <= 0:
        raise DegreeZero(f"companion form needs degree >= 1, got {d}")
    s = P.rows
    if P.rows != P.cols:
        raise ValueError("matrix polynomial must be square")
    N = s * d
    M1 = np.eye(N, dtype=complex)
    M1[:s, :s] = P.coeff(d)
    M0 = np.zeros((N, N), dtype=complex)
    for j in range(d):
        M0[:s, j * s : (j + 1) * s] = P.coeff(d - 1 - j)
    if d > 1:
        M0[s:, :-s] -= np.eye(N - s)
    return M0, M1


def finite_eigenvalues(P: PolyMatrix) -> np.ndarray:
    """Finite eigenvalues of ``P`` in backend (QZ) order."""
    M0, M1 = companion_pencil(P)
    try:
        ab = sla.eig(-M0, M1, left=False, right=False, homogeneous_eigvals=True)
    except (np.linalg.LinAlgError, ValueError) as exc:
        raise BackendFailure(f"generalized eigensolver failed: {exc}") from exc
    alpha, beta = ab
    if not (np.all(np.isfinite(alpha)) and np.all(np.isfinite(beta))):
        raise BackendFailure("generalized eigensolver returned non-finite values")
    # beta is relative to the row scaling of M1; the leading block row carries P_d.
    bnorm = max(np.linalg.norm(M1, 2), 1.0)
    finite = np.abs(beta) > 1e2 * EPS * bnorm
    lam = np.full(alpha.shape, np.inf, dtype=complex)
    lam[finite] = alpha[finite] / beta[finite]
    keep = finite & (np.abs(lam) < INF_CUTOFF)
    return lam[keep]


def null_vectors(P: PolyMatrix, lam: complex) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Right and left (transpose convention) null directions of ``P(lam)``.

    Returns ``(v, w, s)`` with ``s`` the singular values of ``P(lam)``.
    """
    U, s, Vh = np.linalg.svd(P(lam))
    v = Vh[-1].conj()
    w = U[:, -1].conj()
    return v, w, s


def refine_eigenvalue(P: PolyMatrix, lam: complex, steps: int = 2) -> complex:
    """Newton steps ``lam -= w.T P(lam) v / w.T P'(lam) v`` with SVD null vectors.

    A step is taken only if it is tiny relative to ``lam``, so a refinement
    can never jump to a different eigenvalue.
    """
    lam = complex(lam)
    for _ in range(steps):
        v, w, _s = null_vectors(P, lam)
        denom = w @ eval_derivative(P, lam) @ v
        if denom == 0:
            break
        step = (w @ P(lam) @ v) / denom
        if not abs(step) <= 1e-6 * max(1.0, abs(lam)):
            break
        lam -= step
    return lam


def _make_zero(P: PolyMatrix, lam: complex, n: int, refine: bool) -> SimpleZero:
    lam = refine_eigenvalue(P, lam) if refine else complex(lam)
    v, w, s = null_vectors(P, lam)
    dP = eval_derivative(P, lam)
    K = float(abs(w @ dP @ v))
    K_mag = float(np.abs(w) @ np.abs(dP) @ np.abs(v))
    gap = float(s[-2]) if s.size > 1 else np.inf
    return SimpleZero(lam, v, w, K, float(s[-1]), gap, poly_scale(P, lam), K_mag, n)


def _select_index(lams: np.ndarray, target) -> np.ndarray:
    if target in ("all", None):
        return np.arange(lams.size)
    if target in ("largest", "largest_magnitude"):
        return np.array([int(np.argmax(np.abs(lams)))])
    return np.array([int(np.argmin(np.abs(lams - complex(target))))])


def eigenpairs(P: PolyMatrix, n: int = 0, refine: bool = True, target=None) -> list[SimpleZero]:
    """Finite eigenvalues of ``P`` with their null vectors.

    ``target`` restricts the output to ``"largest"`` magnitude, the eigenvalue
    nearest a complex number, or ``"all"`` (default). ``refine`` polishes each
    returned eigenvalue with :func:`refine_eigenvalue`.
    """
    lams = finite_eigenvalues(P)
    if lams.size == 0:
        raise NoFiniteEigenvalues("the matrix polynomial has no finite eigenvalues")
    return [_make_zero(P, lams[i], n, refine) for i in _select_index(lams, target)]


def nearest_eigenvalue(P: PolyMatrix, target: complex) -> complex:
    lams = finite_eigenvalues(P)
    if lams.size == 0:
        raise NoFiniteEigenvalues("the matrix polynomial has no finite eigenvalues")
    # argmin returns the first index on ties, which fixes the tie-break.
    return complex(lams[int(np.argmin(np.abs(lams - target)))])


def system_zeros(
    S: PolySystemMatrix, target=None, tol: float | None = None, refine: bool = True
) -> list[SimpleZero]:
    """Eigenpairs of the assembled system matrix with minimality reports attached."""
    P = assemble(S)
    return [
        replace(z, minimality=minimality_at(S, z.lambda0, tol))
        for z in eigenpairs(P, n=S.n, refine=refine, target=target)
    ]


def select(zeros: list[SimpleZero], target) -> list[SimpleZero]:
    """Pick zeros by ``"largest"``, ``"all"``, or a complex number (nearest)."""
    if not zeros:
        raise NoFiniteEigenvalues("no eigenvalues to select from")
    lams = np.array([z.lambda0 for z in zeros])
    return [zeros[i] for i in _select_index(lams, target)]
