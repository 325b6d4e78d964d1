"""Dense matrix polynomials in the monomial basis."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

#: Degree reported for the zero polynomial.
NEG_INF_DEGREE = -1


@dataclass(frozen=True, eq=False, init=False)
class PolyMatrix:
    """Matrix polynomial ``sum_i coeffs[i] * z**i`` with complex coefficients.

    ``coeffs`` is stored as a read-only array of shape ``(len, rows, cols)``.
    Trailing zero coefficients are kept as given; use :meth:`normalize` to
    drop them.
    """

    coeffs: np.ndarray

    def __init__(self, coeffs, rows: int | None = None, cols: int | None = None):
        arrs = [np.atleast_2d(np.asarray(c, dtype=complex)) for c in coeffs]
        if not arrs:
            if rows is None or cols is None:
                raise ValueError("empty coefficient list needs explicit rows and cols")
            arrs = [np.zeros((rows, cols), dtype=complex)]
        shape = arrs[0].shape
        if any(a.shape != shape for a in arrs):
            raise ValueError("all coefficients must share one shape")
        if (rows is not None and rows != shape[0]) or (cols is not None and cols != shape[1]):
            raise ValueError(f"coefficient shape {shape} does not match ({rows}, {cols})")
        if shape[0] < 1 or shape[1] < 1:
            raise ValueError("matrix dimensions must be positive")
        stacked = np.stack(arrs)
        stacked.setflags(write=False)
        object.__setattr__(self, "coeffs", stacked)

    @classmethod
    def zeros(cls, rows: int, cols: int) -> PolyMatrix:
        return cls([np.zeros((rows, cols))])

    @classmethod
    def constant(cls, mat) -> PolyMatrix:
        return cls([mat])

    @property
    def rows(self) -> int:
        return self.coeffs.shape[1]

    @property
    def cols(self) -> int:
        return self.coeffs.shape[2]

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    def __len__(self) -> int:
        return self.coeffs.shape[0]

    def coeff(self, i: int) -> np.ndarray:
        """Coefficient of ``z**i``; zero outside the stored range."""
        if 0 <= i < len(self):
            return self.coeffs[i]
        return np.zeros(self.shape, dtype=complex)

    def degree(self) -> int:
        """Index of the highest nonzero coefficient, ``NEG_INF_DEGREE`` if none."""
        nz = np.flatnonzero(np.any(self.coeffs != 0, axis=(1, 2)))
        return int(nz[-1]) if nz.size else NEG_INF_DEGREE

    def is_zero(self) -> bool:
        return self.degree() == NEG_INF_DEGREE

    def normalize(self) -> PolyMatrix:
        """Drop trailing coefficients that are exactly zero."""
        return PolyMatrix(self.coeffs[: max(self.degree(), 0) + 1])

    def __call__(self, z: complex) -> np.ndarray:
        return eval_poly(self, z)

    def derivative(self) -> PolyMatrix:
        if len(self) == 1:
            return PolyMatrix.zeros(*self.shape)
        k = np.arange(1, len(self))[:, None, None]
        return PolyMatrix(self.coeffs[1:] * k)

    def _binary(self, other: PolyMatrix, sign: int) -> PolyMatrix:
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")
        m = max(len(self), len(other))
        return PolyMatrix([self.coeff(i) + sign * other.coeff(i) for i in range(m)])

    def __add__(self, other: PolyMatrix) -> PolyMatrix:
        return self._binary(other, 1)

    def __sub__(self, other: PolyMatrix) -> PolyMatrix:
        return self._binary(other, -1)

    def __neg__(self) -> PolyMatrix:
        return PolyMatrix(-self.coeffs)

    def __mul__(self, alpha: complex) -> PolyMatrix:
        return PolyMatrix(self.coeffs * complex(alpha))

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if not isinstance(other, PolyMatrix):
            return NotImplemented
        if other.shape != self.shape:
            return False
        m = max(len(self), len(other))
        return all(np.array_equal(self.coeff(i), other.coeff(i)) for i in range(m))

    def coeff_norms(self) -> np.ndarray:
        """Spectral norms of the stored coefficients."""
        return np.array([np.linalg.norm(c, 2) for c in self.coeffs])

    def to_dict(self) -> dict:
        return {
            "rows": self.rows,
            "cols": self.cols,
            "coeffs": [
                [[[float(z.real), float(z.imag)] for z in row] for row in c]
                for c in self.coeffs
            ],
        }

    @classmethod
    def from_dict(cls, data: dict) -> PolyMatrix:
        rows, cols = int(data["rows"]), int(data["cols"])
        mats = []
        for c in data["coeffs"]:
            arr = np.asarray(c, dtype=float)
            if arr.shape != (rows, cols, 2):
                raise ValueError(f"coefficient of shape {arr.shape[:2]}, expected ({rows}, {cols})")
            mats.append(arr[..., 0] + 1j * arr[..., 1])
        return cls(mats, rows=rows, cols=cols)


def eval_poly(P: PolyMatrix, z: complex) -> np.ndarray:
    """Horner evaluation of ``P`` at ``z``."""
    out = P.coeffs[-1].copy()
    for c in P.coeffs[-2::-1]:
        out = out * z + c
    return out


def eval_derivative(P: PolyMatrix, z: complex) -> np.ndarray:
    """``sum_i i * P_i * z**(i-1)``, evaluated with a Horner recurrence."""
    if len(P) == 1:
        return np.zeros(P.shape, dtype=complex)
    d = len(P) - 1
    out = d * P.coeffs[d]
    for i in range(d - 1, 0, -1):
        out = out * z + i * P.coeffs[i]
    return out


def degree(P: PolyMatrix) -> int:
    return P.degree()


def block_poly(blocks: Sequence[Sequence[PolyMatrix]]) -> PolyMatrix:
    """Assemble a block matrix polynomial from a grid of conformable blocks."""
    m = max(len(b) for row in blocks for b in row)
    return PolyMatrix([np.block([[b.coeff(i) for b in row] for row in blocks]) for i in range(m)])
