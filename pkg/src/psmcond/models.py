"""Example problems and experiment realizations as polynomial system matrices."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .condition import WeightScheme
from .errors import InvalidSpec
from .polymat import PolyMatrix
from .psm import PolySystemMatrix

MODEL_NAMES = (
    "damped_vibration_rep1",
    "damped_vibration_rep3",
    "loaded_string_rep2",
    "loaded_string_rep4",
    "example52",
    "example24_psm",
    "example29_psm",
)

DEFAULTS = {
    "damped_vibration_rep1": {"n": 20, "k": 2, "seed": 0},
    "damped_vibration_rep3": {"n": 20, "k": 2, "seed": 0},
    "loaded_string_rep2": {"n": 10, "k": 1.0, "m": 1.0},
    "loaded_string_rep4": {"n": 10, "k": 1.0, "m": 1.0},
    "example52": {"alpha": 2.0, "beta": 3.0, "k": 2},
    "example24_psm": {},
    "example29_psm": {},
}


@dataclass(frozen=True)
class ModelSpec:
    name: str
    params: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.name not in MODEL_NAMES:
            raise InvalidSpec(f"unknown model {self.name!r}; choose from {', '.join(MODEL_NAMES)}")
        merged = {**DEFAULTS[self.name], **{k: v for k, v in self.params.items() if v is not None}}
        object.__setattr__(self, "params", merged)
        p = merged
        if "n" in p and (int(p["n"]) != p["n"] or p["n"] < 1):
            raise InvalidSpec(f"n must be a positive integer, got {p['n']}")
        if self.name.startswith("damped") or self.name == "example52":
            if int(p["k"]) != p["k"] or p["k"] < 1:
                raise InvalidSpec(f"k must be a positive integer, got {p['k']}")
        if self.name.startswith("loaded"):
            if p["m"] == 0:
                raise InvalidSpec("m must be nonzero")
            if p["k"] <= 0:
                raise InvalidSpec(f"k must be positive, got {p['k']}")
        if self.name == "example52" and p["alpha"] == 0:
            raise InvalidSpec("alpha must be nonzero")

    def to_dict(self) -> dict:
        return {"name": self.name, "params": dict(self.params)}


def _poly(*coeffs) -> PolyMatrix:
    return PolyMatrix(coeffs)


def example29() -> PolySystemMatrix:
    """``R = [[1, 0], [1/(l-1), 1]]`` realized with ``-A(l) = l - 1``."""
    return PolySystemMatrix(
        A=_poly([[1.0]], [[-1.0]]),
        B=_poly([[1.0, 0.0]]),
        C=_poly([[0.0], [-1.0]]),
        D=_poly(np.eye(2)),
    )


def example52(alpha: complex, beta: complex, k: int) -> PolySystemMatrix:
    """``R = diag(l - alpha, 1) @ [[l^k, beta], [beta, l^k]]^{-1}`` with ``B = I``, ``D = 0``."""
    k = int(k)
    A = [np.zeros((2, 2)) for _ in range(k + 1)]
    A[0] = np.array([[0.0, beta], [beta, 0.0]])
    A[k] = A[k] + np.eye(2)
    return PolySystemMatrix(
        A=PolyMatrix(A),
        B=_poly(np.eye(2)),
        C=_poly([[-alpha, 0.0], [0.0, 1.0]], [[1.0, 0.0], [0.0, 0.0]]),
        D=_poly(np.zeros((2, 2))),
    )


def string_matrices(n: int) -> tuple[np.ndarray, np.ndarray]:
    """Stiffness and mass matrices of the loaded string on ``n`` elements."""
    h = 1.0 / n
    e = np.ones(n - 1)
    K = (np.diag(2 * np.ones(n)) - np.diag(e, 1) - np.diag(e, -1)) / h
    K[-1, -1] = 1.0 / h
    M = (np.diag(4 * np.ones(n)) + np.diag(e, 1) + np.diag(e, -1)) * h / 6
    M[-1, -1] = h / 3
    return K, M


def loaded_string(n: int, k: float, m: float, rep: int) -> PolySystemMatrix:
    """``R(l) = K - l M + k l/(l - k/m) e_n e_n^T`` with the spring factor ``k``
    placed on the input (``rep=2``) or the output (``rep=4``) coupling.
    """
    K, M = string_matrices(n)
    en = np.zeros((n, 1))
    en[-1, 0] = 1.0
    A = _poly([[-k / m]], [[1.0]])
    D = _poly(K, -M)
    if rep == 2:
        B, C = _poly(k * en.T), _poly(np.zeros((n, 1)), en)
    elif rep == 4:
        B, C = _poly(en.T), _poly(np.zeros((n, 1)), k * en)
    else:
        raise InvalidSpec(f"loaded string representation must be 2 or 4, got {rep}")
    return PolySystemMatrix(A, B, C, D)


def vibration_data(n: int, k: int, seed) -> dict:
    """Standard normal ``K``, ``M``, ``C_1..C_k`` and poles ``omega``."""
    rng = np.random.default_rng(seed)
    return {
        "K": rng.standard_normal((n, n)),
        "M": rng.standard_normal((n, n)),
        "C": [rng.standard_normal((n, n)) for _ in range(k)],
        "omega": rng.standard_normal(k),
    }


def damped_vibration(n: int, k: int, seed, rep: int) -> PolySystemMatrix:
    """``R(l) = -K + l M + l^2 sum_i C_i/(omega_i - l)``.

    ``rep=1`` couples through ``B = l [C_1; ...; C_k]`` and ``C = [l I ... l I]``;
    ``rep=3`` moves both factors of ``l`` to ``C = [l^2 I ... l^2 I]``.
    """
    data = vibration_data(n, k, seed)
    nk = n * k
    A = _poly(np.kron(np.diag(data["omega"]), np.eye(n)), -np.eye(nk))
    stackC = np.vstack(data["C"])
    ones = np.hstack([np.eye(n)] * k)
    D = _poly(-data["K"], data["M"])
    if rep == 1:
        B = _poly(np.zeros((nk, n)), stackC)
        C = _poly(np.zeros((n, nk)), ones)
    elif rep == 3:
        B = _poly(stackC)
        C = _poly(np.zeros((n, nk)), np.zeros((n, nk)), ones)
    else:
        raise InvalidSpec(f"damped vibration representation must be 1 or 3, got {rep}")
    return PolySystemMatrix(A, B, C, D)


def build(spec: ModelSpec) -> PolySystemMatrix:
    p = spec.params
    name = spec.name
    if name in ("example24_psm", "example29_psm"):
        return example29()
    if name == "example52":
        return example52(p["alpha"], p["beta"], p["k"])
    if name.startswith("loaded_string"):
        return loaded_string(int(p["n"]), float(p["k"]), float(p["m"]), int(name[-1]))
    return damped_vibration(int(p["n"]), int(p["k"]), p["seed"], int(name[-1]))


def data_only_weights(spec: ModelSpec) -> WeightScheme:
    """Weights that perturb only ``K``, ``M``, ``C_i`` and ``omega_i``."""
    if spec.name == "damped_vibration_rep1":
        return WeightScheme(a=(1, 0), b=(0, 1), c=(0, 0), d=(1, 1))
    if spec.name == "damped_vibration_rep3":
        return WeightScheme(a=(1, 0), b=(1,), c=(0, 0, 0), d=(1, 1))
    raise InvalidSpec(f"data-only weights are defined for damped vibration models, not {spec.name}")


def example52_weights(k: int) -> WeightScheme:
    """All ones except ``d_0 = 0``."""
    return WeightScheme(a=(1,) * (int(k) + 1), b=(1,), c=(1, 1), d=(0,))
