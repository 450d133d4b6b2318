"""Per-step metrics stream and trailing-window summaries of a trajectory"""

import logging
import math
from typing import Literal

import numpy as np
import pandas as pd

from services.metrics.clustering import (
    ROBOT_THRESHOLD,
    SIM_THRESHOLD,
    cluster_robot,
    cluster_sim,
    trajectory_extent,
)
from services.metrics.collective import mean_iid, overlap_flags, overlap_ratio, polarization
from services.metrics.shape import circularity, unwrap_positions
from shared.errors import DegenerateInput
from shared.models import Arena, MetricsRecord, Trajectory

logger = logging.getLogger(__name__)

METRIC_COLUMNS = ["t", "P", "D_mean", "RCA", "N_clus_max", "overlap_count"]
SUMMARY_METRICS = ["P", "D_mean", "RCA", "N_clus_max"]
Clustering = Literal["sim", "robot"]
CLUSTERING_THRESHOLDS: dict[str, float] = {"sim": SIM_THRESHOLD, "robot": ROBOT_THRESHOLD}


def compute_record(
    t: int,
    states: np.ndarray,
    arena: Arena,
    radius: float,
    threshold: float = SIM_THRESHOLD,
    r_max: float | None = None,
) -> MetricsRecord:
    """
    Metrics of one snapshot; states has shape (agents, 4)

    With `r_max` set, fragmentation uses the robot-data dissimilarity scaled
    by that extent instead of the simulation one.
    """
    positions = states[:, 0:2]
    headings = states[:, 2]
    n_agents = states.shape[0]

    d_mean = mean_iid(positions, arena) if n_agents >= 2 else None
    rca = circularity(unwrap_positions(positions, arena)) if n_agents >= 3 else None
    if n_agents < 2:
        n_clus_max = 1
    elif r_max is None:
        n_clus_max = cluster_sim(positions, headings, threshold, arena)[1]
    else:
        n_clus_max = cluster_robot(positions, headings, r_max, threshold)[1]
    return MetricsRecord(
        t=int(t),
        P=polarization(headings),
        D_mean=d_mean,
        RCA=rca,
        N_clus_max=n_clus_max,
        overlap_count=int(overlap_flags(positions, radius, arena).sum()),
    )


def metrics_records(
    trajectory: Trajectory,
    arena: Arena,
    radius: float,
    threshold: float | None = None,
    clustering: Clustering = "sim",
) -> list[MetricsRecord]:
    if clustering not in CLUSTERING_THRESHOLDS:
        raise ValueError(f"unknown clustering {clustering!r}")
    if threshold is None:
        threshold = CLUSTERING_THRESHOLDS[clustering]
    r_max = trajectory_extent(trajectory.positions) if clustering == "robot" else None
    return [
        compute_record(t, block, arena, radius, threshold, r_max)
        for t, block in zip(trajectory.times, trajectory.states)
    ]


def metrics_frame(
    trajectory: Trajectory,
    arena: Arena,
    radius: float,
    threshold: float | None = None,
    clustering: Clustering = "sim",
) -> pd.DataFrame:
    """One row per recorded step; undefined metrics are NaN"""
    records = metrics_records(trajectory, arena, radius, threshold, clustering)
    logger.debug(f"Computed metrics for {len(records)} records of {trajectory.n_agents} agents")
    frame = pd.DataFrame([record.model_dump() for record in records], columns=METRIC_COLUMNS)
    return frame.astype({"D_mean": "float64", "RCA": "float64"})


def _finite_or_none(value: float) -> float | None:
    return None if value is None or math.isnan(value) else float(value)


def summarize(
    frame: pd.DataFrame,
    trajectory: Trajectory,
    arena: Arena,
    radius: float,
    window: float = 0.25,
    excluded: set[int] | None = None,
) -> dict:
    """
    Mean and standard deviation of each metric over the trailing window

    Steps listed in `excluded` are dropped before averaging. The overlap
    ratio is computed over the same steps, so it samples the run at the
    recorded steps only; record with a stride of 1 to count every timestep.
    """
    if not 0 < window <= 1:
        raise ValueError(f"window {window} outside (0, 1]")
    tail = trajectory.window(window)
    keep = np.ones(tail.n_records, dtype=bool)
    if excluded:
        keep = ~np.isin(tail.times, list(excluded))
    if not keep.any():
        raise DegenerateInput("every step in the analysis window is masked")

    times = tail.times[keep]
    rows = frame[frame["t"].isin(times)]
    summary: dict = {"window": window, "n_steps": int(keep.sum()), "t_start": int(times[0])}
    for metric in SUMMARY_METRICS:
        values = rows[metric].astype("float64")
        summary[f"{metric}_mean"] = _finite_or_none(values.mean())
        summary[f"{metric}_std"] = _finite_or_none(values.std(ddof=0))
    summary["R_o_sim"] = overlap_ratio(tail.positions[keep], radius, arena)
    return summary


def summarize_trajectory(
    trajectory: Trajectory,
    arena: Arena,
    radius: float,
    window: float = 0.25,
    excluded: set[int] | None = None,
) -> dict:
    """Summary without keeping the full metrics stream; only the window is evaluated"""
    tail = trajectory.window(window)
    frame = metrics_frame(tail, arena, radius)
    return summarize(frame, tail, arena, radius, window=1.0, excluded=excluded) | {"window": window}
