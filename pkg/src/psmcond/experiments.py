"""Batch runners for the damped-vibration and loaded-string studies."""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor

import numpy as np

from .condition import analyze, weight_scheme_uniform
from .eigensolve import system_zeros
from .models import ModelSpec, build, data_only_weights

K_GRID = tuple(10.0**e for e in range(7))
ASYMPTOTIC_KMIN = 1e3


def _map(fn, items, workers: int):
    if workers and workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as ex:
            return list(ex.map(fn, items))
    return [fn(it) for it in items]


def _vibration_rows(args) -> list[dict]:
    n, k, seed, realization = args
    rows = []
    for rep in (1, 3):
        spec = ModelSpec(f"damped_vibration_rep{rep}", {"n": n, "k": k, "seed": seed})
        S = build(spec)
        (z,) = system_zeros(S, target="largest")
        for mode, weights in (("uniform", weight_scheme_uniform(S)), ("data_only", data_only_weights(spec))):
            r = analyze(S, z, weights)
            rows.append(
                {
                    "representation": rep,
                    "weights": mode,
                    "realization": realization,
                    "seed": seed,
                    "lambda0_re": r.lambda0.real,
                    "lambda0_im": r.lambda0.imag,
                    "kappa_S": r.kappa_S,
                    "kappa_U": r.kappa_U,
                    "ratio": r.ratio,
                }
            )
    return rows


def run_experiment1(n: int = 20, k: int = 2, realizations: int = 100, seed: int = 0, workers: int = 1) -> list[dict]:
    """Condition number ratios at the largest eigenvalue for random vibration data.

    Realization ``j`` draws its data from seed ``seed + j``.
    """
    jobs = [(n, k, seed + j, j) for j in range(realizations)]
    rows = [r for chunk in _map(_vibration_rows, jobs, workers) for r in chunk]
    rows.sort(key=lambda r: (r["representation"], r["weights"], r["realization"]))
    return rows


def _string_rows(args) -> list[dict]:
    n, m, k = args
    rows = []
    for rep in (2, 4):
        S = build(ModelSpec(f"loaded_string_rep{rep}", {"n": n, "k": k, "m": m}))
        (z,) = system_zeros(S, target="largest")
        r = analyze(S, z, weight_scheme_uniform(S))
        rows.append(
            {
                "representation": rep,
                "k": k,
                "lambda0_re": r.lambda0.real,
                "lambda0_im": r.lambda0.imag,
                "kappa_S": r.kappa_S,
                "kappa_U": r.kappa_U,
                "ratio": r.ratio,
            }
        )
    return rows


def run_experiment2(n: int = 10, m: float = 1.0, k_grid=K_GRID, workers: int = 1) -> list[dict]:
    """Condition numbers of the largest eigenvalue of the loaded string versus ``k``."""
    jobs = [(n, m, float(k)) for k in k_grid]
    rows = [r for chunk in _map(_string_rows, jobs, workers) for r in chunk]
    rows.sort(key=lambda r: (r["representation"], r["k"]))
    return rows


def loglog_slope(x, y, xmin: float | None = None) -> float:
    """Least-squares slope of ``log10 y`` against ``log10 x`` over ``x >= xmin``."""
    x, y = np.asarray(x, dtype=float), np.asarray(y, dtype=float)
    if xmin is not None:
        keep = x >= xmin
        x, y = x[keep], y[keep]
    if x.size < 2:
        raise ValueError("need at least two points for a slope")
    return float(np.polyfit(np.log10(x), np.log10(y), 1)[0])


def experiment2_slopes(rows: list[dict], kmin: float | None = ASYMPTOTIC_KMIN) -> dict:
    out = {}
    for rep in sorted({r["representation"] for r in rows}):
        sub = [r for r in rows if r["representation"] == rep]
        ks = [r["k"] for r in sub]
        out[f"rep{rep}"] = {
            name: loglog_slope(ks, [r[name] for r in sub], kmin) for name in ("kappa_S", "kappa_U")
        }
    return out
