"""Experiment grid: sweep noise exponent, dimension, order, length and
Gaussian-fraction, tallying how often the detector recovers the known
generation direction.

Each grid cell runs ``trials_per_cell`` independent simulations (the true
direction is always the generation order) and counts Forward verdicts as
correct, Backward as incorrect and the rest as undecided.  Per-trial
randomness is derived from ``SeedSequence([base_seed, cell_index,
trial_index])`` so any cell or trial can be reproduced in isolation.

Results are written as CSV (header
``r,k,p,t,gaussian_fraction,trials,correct,incorrect,undecided,mean_fw,mean_bw,errors``,
UTF-8, LF line endings, '.' decimals) or as a JSON array mirroring the
same fields.
"""

from __future__ import annotations

import csv
import json
import math
import os
import tempfile
from dataclasses import dataclass, fields
from itertools import product

import numpy as np
from joblib import Parallel, delayed

from .direction import BACKWARD, FORWARD, UNDECIDED, DirectionConfig, detect
from .exceptions import TimeArrowError
from .simulate import SimConfig, simulate_series

__all__ = ["GridSpec", "CellResult", "run_grid", "emit_results", "load_results"]

CSV_HEADER = [
    "r", "k", "p", "t", "gaussian_fraction", "trials",
    "correct", "incorrect", "undecided", "mean_fw", "mean_bw", "errors",
]


@dataclass(frozen=True)
class GridSpec:
    r_values: tuple[float, ...]
    k_values: tuple[int, ...]
    p_values: tuple[int, ...]
    t_values: tuple[int, ...]
    trials_per_cell: int
    direction_cfg: DirectionConfig
    base_seed: int = 0
    gaussian_fraction_values: tuple[float, ...] = (0.0,)
    burn_in: int = 1000

    def __post_init__(self):
        for name in ("r_values", "k_values", "p_values", "t_values",
                     "gaussian_fraction_values"):
            vals = tuple(getattr(self, name))
            if not vals:
                raise ValueError(f"{name} must be nonempty")
            object.__setattr__(self, name, vals)
        if self.trials_per_cell < 1:
            raise ValueError("trials_per_cell must be >= 1")
        if any(not 0.0 <= f <= 1.0 for f in self.gaussian_fraction_values):
            raise ValueError("gaussian fractions must lie in [0, 1]")

    def cells(self):
        return list(product(self.r_values, self.k_values, self.p_values,
                            self.t_values, self.gaussian_fraction_values))


@dataclass(frozen=True)
class CellResult:
    r: float
    k: int
    p: int
    t: int
    gaussian_fraction: float
    trials: int
    correct: int
    incorrect: int
    undecided: int
    mean_fw: float
    mean_bw: float
    errors: int


def _trial_seeds(base_seed: int, cell_index: int, trial_index: int) -> tuple[int, int]:
    """Documented per-trial splitting rule: two 63-bit seeds (simulation,
    detection) drawn from SeedSequence([base_seed, cell_index, trial_index])."""
    ss = np.random.SeedSequence([int(base_seed), int(cell_index), int(trial_index)])
    root = np.random.default_rng(ss)
    return int(root.integers(2**63)), int(root.integers(2**63))


def _run_trial(cell, cell_index: int, trial_index: int, cfg: DirectionConfig,
               base_seed: int, burn_in: int):
    r, k, p, t, fraction = cell
    sim_seed, detect_seed = _trial_seeds(base_seed, cell_index, trial_index)
    n_gauss = math.ceil(fraction * k)
    sim_cfg = SimConfig(k=k, p=p, t=t, r=r, gaussian_dims=tuple(range(n_gauss)),
                        burn_in=burn_in, seed=sim_seed)
    try:
        sim = simulate_series(sim_cfg)
        report = detect(sim.series, cfg, seed=detect_seed)
    except TimeArrowError:
        return ("error", None, None)
    return (report.verdict, report.fw_score, report.bw_score)


def run_grid(spec: GridSpec, n_jobs: int = 1) -> list[CellResult]:
    """Run every cell of the grid; deterministic given base_seed regardless
    of ``n_jobs`` (trials are reduced in (cell, trial) order)."""
    tasks = [
        (cell, ci, ti)
        for ci, cell in enumerate(spec.cells())
        for ti in range(spec.trials_per_cell)
    ]
    runner = Parallel(n_jobs=n_jobs) if n_jobs != 1 else None
    if runner is None:
        outcomes = [_run_trial(cell, ci, ti, spec.direction_cfg, spec.base_seed,
                               spec.burn_in) for cell, ci, ti in tasks]
    else:
        outcomes = runner(
            delayed(_run_trial)(cell, ci, ti, spec.direction_cfg, spec.base_seed,
                                spec.burn_in)
            for cell, ci, ti in tasks
        )
    results = []
    n = spec.trials_per_cell
    for ci, cell in enumerate(spec.cells()):
        chunk = outcomes[ci * n : (ci + 1) * n]
        verdicts = [v for v, _, _ in chunk]
        fw = [f for _, f, _ in chunk if f is not None]
        bw = [b for _, _, b in chunk if b is not None]
        r, k, p, t, fraction = cell
        results.append(CellResult(
            r=float(r), k=int(k), p=int(p), t=int(t),
            gaussian_fraction=float(fraction), trials=n,
            correct=verdicts.count(FORWARD),
            incorrect=verdicts.count(BACKWARD),
            undecided=verdicts.count(UNDECIDED),
            mean_fw=float(np.mean(fw)) if fw else float("nan"),
            mean_bw=float(np.mean(bw)) if bw else float("nan"),
            errors=verdicts.count("error"),
        ))
    return results


def _fmt(value) -> str:
    if isinstance(value, float):
        return format(value, ".17g")
    return str(value)


def _atomic_write(path: str, text: str):
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def emit_results(results: list[CellResult], format: str = "csv", path: str = "results.csv"):
    """Write one row/record per cell; refuses to touch the file when the
    result list is empty or the format is unknown."""
    if not results:
        raise ValueError("no results to emit")
    if format == "csv":
        lines = [",".join(CSV_HEADER)]
        for cell in results:
            lines.append(",".join(_fmt(getattr(cell, f)) for f in CSV_HEADER))
        _atomic_write(path, "\n".join(lines) + "\n")
    elif format == "json":
        records = []
        for cell in results:
            rec = {}
            for f in CSV_HEADER:
                v = getattr(cell, f)
                if isinstance(v, float):
                    v = None if math.isnan(v) else float(format(v, ".17g"))
                rec[f] = v
            records.append(rec)
        _atomic_write(path, json.dumps(records, indent=2) + "\n")
    else:
        raise ValueError(f"unknown format {format!r}")


_FLOAT_FIELDS = ("r", "gaussian_fraction", "mean_fw", "mean_bw")


def _cell_from_record(rec: dict) -> CellResult:
    kwargs = {}
    for f in fields(CellResult):
        v = rec[f.name]
        if v is None:
            v = float("nan")
        kwargs[f.name] = float(v) if f.name in _FLOAT_FIELDS else int(v)
    return CellResult(**kwargs)


def load_results(path: str, format: str | None = None) -> list[CellResult]:
    """Parse a results file back into CellResult records (round-trips
    emit_results exactly)."""
    if format is None:
        format = "json" if path.endswith(".json") else "csv"
    if format == "json":
        with open(path, encoding="utf-8") as fh:
            return [_cell_from_record(rec) for rec in json.load(fh)]
    with open(path, encoding="utf-8", newline="") as fh:
        reader = csv.DictReader(fh)
        return [_cell_from_record(rec) for rec in reader]
