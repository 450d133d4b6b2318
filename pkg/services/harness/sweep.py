"""
Parameter sweeps over (alpha0, beta0, FOV) grids

Each cell is repeated with run indices 0..reps-1 of the base seed, so every
cell sees the same initial conditions for a given repetition. Cells run in
parallel through joblib; results are collected in grid order. R_o_sim is
sampled at the recorded steps of each run (every record_stride steps).
"""

import itertools
import logging
import math
from pathlib import Path

import numpy as np
import pandas as pd
from joblib import Parallel, delayed

from services.engine import run
from services.metrics import summarize_trajectory
from shared.models import SimConfig, SweepSpec

logger = logging.getLogger(__name__)

GRID_COLUMNS = ["alpha0", "beta0", "fov"]
SWEEP_METRICS = ["P", "D_mean", "RCA", "N_clus_max", "R_o_sim"]
DETAIL_COLUMNS = [*GRID_COLUMNS, "rep", "seed", *SWEEP_METRICS, "failed"]

DEFAULT_ALPHA0 = [0.0, 0.5, 1.0, 1.5, 2.0]
DEFAULT_BETA0 = [0.0, 1.0, 2.0, 3.0, 4.0]
DEFAULT_FOV = [0.25, 0.5, 0.75, 1.0]


def cell_config(base: SimConfig, alpha0: float, beta0: float, fov: float) -> SimConfig:
    """Base config with one grid cell's parameters; fov is a fraction of 2*pi"""
    params = base.params.model_copy(
        update={"alpha0": alpha0, "beta0": beta0, "fov_half": fov * math.pi}
    )
    return base.model_copy(update={"params": params})


def run_cell(config: SimConfig, fov: float, rep: int, window: float) -> dict:
    """One repetition of one cell; failures become a flagged row"""
    params = config.params
    row = {
        "alpha0": params.alpha0,
        "beta0": params.beta0,
        "fov": fov,
        "rep": rep,
        "seed": config.seed,
    }
    try:
        trajectory = run(config, run_index=rep)
        summary = summarize_trajectory(trajectory, config.arena, params.radius, window)
    except Exception as e:
        logger.error(
            f"Run failed (alpha0={params.alpha0}, beta0={params.beta0}, "
            f"fov={row['fov']}, rep={rep}): {e}"
        )
        return row | {metric: np.nan for metric in SWEEP_METRICS} | {"failed": True}

    metrics = {metric: summary[f"{metric}_mean"] for metric in SWEEP_METRICS[:-1]}
    metrics["R_o_sim"] = summary["R_o_sim"]
    return row | {k: np.nan if v is None else v for k, v in metrics.items()} | {"failed": False}


def _cohesive_share(values: pd.Series, n_agents: int) -> float:
    """Share of successful repetitions whose largest cluster holds every agent"""
    values = values.dropna()
    return float((values >= n_agents).mean()) if len(values) else np.nan


def aggregate(detail: pd.DataFrame, n_agents: int) -> pd.DataFrame:
    """Mean over repetitions per cell, in grid order"""
    grouped = detail.groupby(GRID_COLUMNS, sort=False)
    table = grouped[SWEEP_METRICS].mean()
    table["full_cohesion_frac"] = grouped["N_clus_max"].agg(_cohesive_share, n_agents=n_agents)
    table["n_failed"] = grouped["failed"].sum().astype(int)
    return table.reset_index()


def sweep(
    spec: SweepSpec, workers: int = 1
) -> tuple[pd.DataFrame, pd.DataFrame]:
    """Detail table (one row per cell and repetition) and per-cell aggregate"""
    cells = list(itertools.product(spec.alpha0_values, spec.beta0_values, spec.fov_fractions))
    logger.info(f"Sweeping {len(cells)} cells x {spec.repetitions} reps with {workers} workers")

    tasks = [
        (cell_config(spec.base, alpha0, beta0, fov), fov, rep)
        for alpha0, beta0, fov in cells
        for rep in range(spec.repetitions)
    ]
    rows = Parallel(n_jobs=workers)(
        delayed(run_cell)(config, fov, rep, spec.window) for config, fov, rep in tasks
    )

    detail = pd.DataFrame(rows, columns=DETAIL_COLUMNS)
    n_failed = int(detail["failed"].sum())
    if n_failed:
        logger.warning(f"{n_failed} of {len(detail)} runs failed")
    return detail, aggregate(detail, spec.base.n_agents)


def write_sweep(detail: pd.DataFrame, table: pd.DataFrame, out_dir: Path) -> tuple[Path, Path]:
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    detail_path = out_dir / "sweep_detail.csv"
    aggregate_path = out_dir / "sweep_aggregate.csv"
    detail.to_csv(detail_path, index=False)
    table.to_csv(aggregate_path, index=False)
    logger.info(f"Wrote {detail_path} and {aggregate_path}")
    return detail_path, aggregate_path
