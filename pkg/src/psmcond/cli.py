"""Command-line front end.

Every command writes a CSV (with header) to ``--out`` and a JSON sidecar
``<out>.meta.json`` recording the seed, tolerances and resolved settings.
Exit codes: 0 ok, 2 parse, 3 not minimal, 4 not simple, 5 pole/singular,
6 eigensolver failure.
"""

from __future__ import annotations

import argparse
import csv
import json
import logging
import sys
from dataclasses import asdict, dataclass, field
from importlib.metadata import PackageNotFoundError, version
from pathlib import Path

import numpy as np

from .condition import (
    ConditionReport,
    WeightScheme,
    analyze,
    weight_scheme_relative,
    weight_scheme_uniform,
)
from .eigensolve import system_zeros
from .errors import InvalidSpec, ParseError, PSMError
from .experiments import ASYMPTOTIC_KMIN, K_GRID, experiment2_slopes, run_experiment1, run_experiment2
from .models import ModelSpec, build, data_only_weights, example52_weights
from .perturb import TrialResult, first_order_validate
from .psm import PolySystemMatrix

log = logging.getLogger("psmcond")

COMMANDS = ("analyze", "validate", "experiment1", "experiment2", "example52")
WEIGHT_MODES = ("uniform", "relative", "data_only", "custom")
DEFAULT_EPS = (1e-6, 1e-7, 1e-8)

try:
    __version__ = version("artifact")
except PackageNotFoundError:  # pragma: no cover
    __version__ = "0+unknown"


@dataclass
class ExperimentConfig:
    command: str
    input_path: str | None = None
    model: str | None = None
    params: dict = field(default_factory=dict)
    weights_mode: str = "uniform"
    custom_weights: WeightScheme | None = None
    eps_list: tuple[float, ...] = DEFAULT_EPS
    seed: int = 0
    out_path: str = "out.csv"
    target: object = "largest"
    scaled: bool = False
    realizations: int = 100
    k_grid: tuple[float, ...] = K_GRID
    workers: int = 1

    def __post_init__(self):
        if self.command not in COMMANDS:
            raise ParseError(f"unknown command {self.command!r}")
        if self.weights_mode not in WEIGHT_MODES:
            raise ParseError(f"unknown weights mode {self.weights_mode!r}")
        if (self.weights_mode == "custom") != (self.custom_weights is not None):
            raise ParseError("custom weights are required exactly when --weights custom is used")
        eps = tuple(float(e) for e in self.eps_list)
        if not eps or any(not e > 0 for e in eps):
            raise ParseError(f"eps values must be positive, got {eps}")
        if any(b >= a for a, b in zip(eps, eps[1:])):
            raise ParseError(f"eps values must be strictly decreasing, got {eps}")
        self.eps_list = eps


def parse_target(text):
    if text is None or isinstance(text, complex):
        return text
    text = str(text).strip()
    if text in ("largest", "largest_magnitude", "all"):
        return "largest" if text.startswith("largest") else "all"
    if text.startswith("nearest="):
        parts = text.split("=", 1)[1].split(",")
        try:
            re_, im = (float(parts[0]), float(parts[1]) if len(parts) > 1 else 0.0)
        except ValueError as exc:
            raise ParseError(f"bad target {text!r}") from exc
        return complex(re_, im)
    raise ParseError(f"bad target {text!r}; use largest, all or nearest=RE,IM")


def parse_eps(text) -> tuple[float, ...]:
    if isinstance(text, (list, tuple)):
        return tuple(float(x) for x in text)
    try:
        return tuple(float(x) for x in str(text).split(",") if x.strip())
    except ValueError as exc:
        raise ParseError(f"bad eps list {text!r}") from exc


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="psmcond", description=__doc__.splitlines()[0])
    ap.add_argument("command", choices=COMMANDS)
    ap.add_argument("--config", help="JSON file with any of the options below; flags win")
    ap.add_argument("--input", dest="input_path", help="polynomial system matrix JSON")
    ap.add_argument("--model", help="built-in model name")
    for name, typ in (("alpha", float), ("beta", float), ("k", float), ("n", int), ("m", float)):
        ap.add_argument(f"--{name}", type=typ)
    ap.add_argument("--weights", dest="weights_mode", choices=WEIGHT_MODES)
    ap.add_argument("--weights-file", help="JSON {a:[...], b:[...], c:[...], d:[...]}")
    ap.add_argument("--eps", help="comma separated, strictly decreasing")
    ap.add_argument("--seed", type=int)
    ap.add_argument("--out", dest="out_path")
    ap.add_argument("--target", help="largest | all | nearest=RE,IM")
    ap.add_argument("--scaled", action="store_true", default=None, help="divide condition numbers by |lambda0|")
    ap.add_argument("--realizations", type=int)
    ap.add_argument("--k-grid", help="comma separated k values for experiment2")
    ap.add_argument("--workers", type=int)
    ap.add_argument("-v", "--verbose", action="store_true")
    return ap


def config_from_args(args: argparse.Namespace) -> ExperimentConfig:
    raw: dict = {}
    if args.config:
        try:
            raw = json.loads(Path(args.config).read_text())
        except (OSError, json.JSONDecodeError) as exc:
            raise ParseError(f"cannot read config {args.config}: {exc}") from exc
    flags = {k: v for k, v in vars(args).items() if v is not None}
    merged = {**raw, **flags}
    params = dict(raw.get("params", {}))
    for name in ("alpha", "beta", "k", "n", "m"):
        if name in merged:
            params[name] = merged[name]
    custom = None
    wfile = merged.get("weights_file")
    if wfile:
        try:
            custom = WeightScheme.from_dict(json.loads(Path(wfile).read_text()))
        except (OSError, json.JSONDecodeError, TypeError, ValueError) as exc:
            raise ParseError(f"cannot read weights file {wfile}: {exc}") from exc
    elif "custom_weights" in merged:
        custom = WeightScheme.from_dict(merged["custom_weights"])
    k_grid = merged.get("k_grid", K_GRID)
    return ExperimentConfig(
        command=args.command,
        input_path=merged.get("input_path"),
        model=merged.get("model"),
        params=params,
        weights_mode=merged.get("weights_mode", "custom" if custom is not None else "uniform"),
        custom_weights=custom,
        eps_list=parse_eps(merged.get("eps", DEFAULT_EPS)),
        seed=int(merged.get("seed", 0)),
        out_path=merged.get("out_path", "out.csv"),
        target=parse_target(merged.get("target", "largest")),
        scaled=bool(merged.get("scaled", False)),
        realizations=int(merged.get("realizations", 100)),
        k_grid=parse_eps(k_grid),
        workers=int(merged.get("workers", 1)),
    )


def _model_spec(cfg: ExperimentConfig) -> ModelSpec | None:
    if cfg.model is None:
        return None
    params = dict(cfg.params)
    if cfg.model.startswith("damped"):
        params.setdefault("seed", cfg.seed)
    return ModelSpec(cfg.model, params)


def load_problem(cfg: ExperimentConfig) -> tuple[PolySystemMatrix, ModelSpec | None]:
    if cfg.input_path:
        S = PolySystemMatrix.load(cfg.input_path)
        S.check_regular()
        return S, None
    spec = _model_spec(cfg)
    if spec is None:
        raise ParseError("give --input PATH or --model NAME")
    return build(spec), spec


def resolve_weights(cfg: ExperimentConfig, S: PolySystemMatrix, spec: ModelSpec | None) -> WeightScheme:
    mode = cfg.weights_mode
    if mode == "custom":
        return cfg.custom_weights
    if mode == "relative":
        return weight_scheme_relative(S)
    if mode == "data_only":
        if spec is None:
            raise InvalidSpec("data_only weights need a built-in damped vibration model")
        return data_only_weights(spec)
    if spec is not None and spec.name == "example52":
        return example52_weights(spec.params["k"])
    return weight_scheme_uniform(S)


def write_csv(path, fields, rows) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", newline="") as fh:
        writer = csv.DictWriter(fh, fieldnames=list(fields))
        writer.writeheader()
        for row in rows:
            writer.writerow({k: repr(v) if isinstance(v, float) else v for k, v in row.items()})


def _jsonable(obj):
    if isinstance(obj, complex):
        return [obj.real, obj.imag]
    if isinstance(obj, np.generic):
        return obj.item()
    if isinstance(obj, tuple):
        return list(obj)
    if isinstance(obj, WeightScheme):
        return obj.to_dict()
    raise TypeError(type(obj).__name__)


def write_meta(out_path, cfg: ExperimentConfig, extra: dict | None = None) -> Path:
    meta = {
        "version": __version__,
        "command": cfg.command,
        "seed": cfg.seed,
        "config": asdict(cfg),
        "tolerances": {
            "minimality": "(n+p) * eps * max(||M||, 1) over [-A; C] and [A, B]",
            "not_simple_K": "1e3 * eps * |w|^T |P'(l0)| |v|",
            "not_simple_sigma2": "1e-10 * sum_i ||P_i|| max(1,|l0|)^i",
            "infinite_eigenvalue_cutoff": "|lambda| >= eps^(-1/2)",
        },
        **(extra or {}),
    }
    path = Path(str(out_path) + ".meta.json")
    path.write_text(json.dumps(meta, indent=2, default=_jsonable))
    return path


def cmd_analyze(cfg: ExperimentConfig) -> int:
    S, spec = load_problem(cfg)
    weights = resolve_weights(cfg, S, spec)
    zeros = system_zeros(S, target=cfg.target)
    reports: list[ConditionReport] = []
    errors: list[PSMError] = []
    for z in zeros:
        try:
            reports.append(analyze(S, z, weights))
        except PSMError as exc:
            log.warning("skipping eigenvalue %s: %s", z.lambda0, exc)
            errors.append(exc)
    write_csv(cfg.out_path, ConditionReport.CSV_FIELDS, [r.csv_row(cfg.scaled) for r in reports])
    write_meta(
        cfg.out_path,
        cfg,
        {"weights": weights.to_dict(), "model": spec.to_dict() if spec else None,
         "reports": [r.to_dict() for r in reports]},
    )
    if not reports:
        raise errors[0]
    return 0


def cmd_validate(cfg: ExperimentConfig) -> int:
    S, spec = load_problem(cfg)
    weights = resolve_weights(cfg, S, spec)
    target = "largest" if cfg.target == "all" else cfg.target
    (z,) = system_zeros(S, target=target)
    summary = first_order_validate(S, z, weights, cfg.eps_list)
    write_csv(cfg.out_path, TrialResult.CSV_FIELDS, [t.csv_row() for t in summary.trials])
    summary_path = Path(cfg.out_path).with_suffix(".summary.json")
    summary_path.write_text(json.dumps({"lambda0": [z.lambda0.real, z.lambda0.imag], **summary.to_dict()}, indent=2))
    write_meta(cfg.out_path, cfg, {"weights": weights.to_dict(), "summary_path": str(summary_path)})
    print(f"kappa_S={summary.kappa_S:.10g} max_rel_error={summary.max_rel_error:.3e}")
    return 0


def cmd_experiment1(cfg: ExperimentConfig) -> int:
    n = int(cfg.params.get("n", 20))
    k = int(cfg.params.get("k", 2))
    rows = run_experiment1(n, k, cfg.realizations, cfg.seed, cfg.workers)
    write_csv(cfg.out_path, rows[0].keys(), rows)
    bounds = {}
    for rep in (1, 3):
        for mode in ("uniform", "data_only"):
            ratios = [r["ratio"] for r in rows if r["representation"] == rep and r["weights"] == mode]
            bounds[f"rep{rep}_{mode}"] = {"min_ratio": min(ratios), "max_ratio": max(ratios)}
    write_meta(cfg.out_path, cfg, {"n": n, "k": k, "seeds": [cfg.seed, cfg.seed + cfg.realizations - 1],
                                   "ratio_ranges": bounds})
    return 0


def cmd_experiment2(cfg: ExperimentConfig) -> int:
    n = int(cfg.params.get("n", 10))
    m = float(cfg.params.get("m", 1.0))
    rows = run_experiment2(n, m, cfg.k_grid, cfg.workers)
    write_csv(cfg.out_path, rows[0].keys(), rows)
    write_meta(
        cfg.out_path,
        cfg,
        {
            "n": n,
            "m": m,
            "k_grid": list(cfg.k_grid),
            "slopes_asymptotic": experiment2_slopes(rows, ASYMPTOTIC_KMIN),
            "slopes_asymptotic_kmin": ASYMPTOTIC_KMIN,
            "slopes_full_grid": experiment2_slopes(rows, None),
        },
    )
    return 0


def cmd_example52(cfg: ExperimentConfig) -> int:
    cfg.model = "example52"
    return cmd_analyze(cfg)


HANDLERS = {
    "analyze": cmd_analyze,
    "validate": cmd_validate,
    "experiment1": cmd_experiment1,
    "experiment2": cmd_experiment2,
    "example52": cmd_example52,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s: %(message)s")
    try:
        cfg = config_from_args(args)
        return HANDLERS[cfg.command](cfg)
    except PSMError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_code


if __name__ == "__main__":
    sys.exit(main())
