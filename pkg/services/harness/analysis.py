"""Offline analysis of recorded trajectories"""

import json
import logging
from pathlib import Path

import numpy as np
import pandas as pd
from pydantic import BaseModel, ConfigDict, Field

from services.engine import read_trajectory
from services.metrics import Clustering, avoidance_ratio, metrics_frame, summarize
from shared.errors import FormatError
from shared.models import Arena

logger = logging.getLogger(__name__)

AVOIDANCE_COLUMNS = ["t", "agent_id", "avoiding"]


class AnalysisOptions(BaseModel):
    """Knobs of one analysis pass"""
    model_config = ConfigDict(frozen=True)

    radius: float = Field(default=5.5, gt=0)
    window: float = Field(default=0.25, gt=0, le=1)
    clustering: Clustering = "sim"
    threshold: float | None = Field(default=None, gt=0)  # None: the variant's default cut
    mask_path: Path | None = None  # steps to exclude from the window aggregates
    avoidance_path: Path | None = None  # per-step avoidance flags, reported as R_o_exp


def load_mask(path: Path) -> set[int]:
    """Excluded timesteps, one integer per line (blank lines and # comments allowed)"""
    excluded = set()
    try:
        text = Path(path).read_text()
    except OSError as e:
        raise FormatError(f"{path}: {e}") from e
    for line_no, line in enumerate(text.splitlines(), start=1):
        content = line.split("#", 1)[0].strip()
        if not content:
            continue
        try:
            excluded.add(int(content))
        except ValueError as e:
            raise FormatError(f"{path}: line {line_no} is not a timestep: {content!r}") from e
    return excluded


def load_avoidance_flags(path: Path) -> np.ndarray:
    """
    Avoidance flag matrix (steps x agents) from a long CSV of t, agent_id, avoiding

    Every step needs one row per agent; `avoiding` is 0 or 1.
    """
    try:
        frame = pd.read_csv(path)
    except (OSError, pd.errors.ParserError, pd.errors.EmptyDataError) as e:
        raise FormatError(f"{path}: {e}") from e
    missing = [column for column in AVOIDANCE_COLUMNS if column not in frame.columns]
    if missing:
        raise FormatError(f"{path}: missing columns {missing}")
    if not frame["avoiding"].isin([0, 1]).all():
        raise FormatError(f"{path}: avoiding must be 0 or 1")
    if frame.duplicated(["t", "agent_id"]).any():
        raise FormatError(f"{path}: repeated (t, agent_id) rows")

    flags = frame.pivot(index="t", columns="agent_id", values="avoiding")
    if flags.isna().any().any():
        raise FormatError(f"{path}: every step needs one row per agent")
    return flags.to_numpy(dtype=bool)


def _json_ready(value):
    if isinstance(value, float) and not np.isfinite(value):
        return None
    return value


def analyze(
    trajectory_path: Path, arena: Arena, options: AnalysisOptions, out_dir: Path
) -> tuple[Path, Path]:
    """Write the per-step metrics CSV and the window summary JSON"""
    trajectory_path = Path(trajectory_path)
    trajectory = read_trajectory(trajectory_path)
    excluded = load_mask(options.mask_path) if options.mask_path else None

    frame = metrics_frame(
        trajectory, arena, options.radius, options.threshold, options.clustering
    )
    summary = summarize(frame, trajectory, arena, options.radius, options.window, excluded)
    summary = {key: _json_ready(value) for key, value in summary.items()}
    summary["n_agents"] = trajectory.n_agents
    summary["n_masked"] = len(excluded) if excluded else 0
    summary["clustering"] = options.clustering
    if options.avoidance_path:
        flags = load_avoidance_flags(options.avoidance_path)
        if flags.shape[1] != trajectory.n_agents:
            raise FormatError(
                f"{options.avoidance_path}: flags for {flags.shape[1]} agents, "
                f"trajectory has {trajectory.n_agents}"
            )
        summary["R_o_exp"] = avoidance_ratio(flags)

    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    stem = trajectory_path.stem
    metrics_path = out_dir / f"{stem}_metrics.csv"
    summary_path = out_dir / f"{stem}_summary.json"
    frame.to_csv(metrics_path, index=False)
    summary_path.write_text(json.dumps(summary, sort_keys=True, indent=2) + "\n")

    logger.info(
        f"Analyzed {trajectory.n_records} records of {trajectory_path} "
        f"({options.clustering} clustering)"
    )
    return metrics_path, summary_path
