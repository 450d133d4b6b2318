"""Trajectory persistence: long-format CSV and a msgpack binary container"""

import logging
from pathlib import Path

import msgpack
import numpy as np
import pandas as pd

from shared.errors import FormatError
from shared.models import Trajectory
from shared.models.records import STATE_COLUMNS

logger = logging.getLogger(__name__)

BINARY_FORMAT = "vswarm-trajectory"
BINARY_VERSION = 1
BINARY_SUFFIXES = {".msgpack", ".bin"}
CSV_COLUMNS = ["t", "agent_id", *STATE_COLUMNS]


def write_trajectory_csv(trajectory: Trajectory, path: Path) -> Path:
    path = Path(path)
    trajectory.to_frame().to_csv(path, index=False)
    return path


def read_trajectory_csv(path: Path) -> Trajectory:
    try:
        frame = pd.read_csv(path, float_precision="round_trip")
    except (OSError, pd.errors.ParserError, pd.errors.EmptyDataError) as e:
        raise FormatError(f"{path}: {e}") from e

    missing = [column for column in CSV_COLUMNS if column not in frame.columns]
    if missing:
        raise FormatError(f"{path}: missing columns {missing}")
    try:
        return Trajectory.from_frame(frame)
    except ValueError as e:
        raise FormatError(f"{path}: {e}") from e


def write_trajectory_binary(trajectory: Trajectory, path: Path) -> Path:
    path = Path(path)
    payload = {
        "format": BINARY_FORMAT,
        "version": BINARY_VERSION,
        "n_records": trajectory.n_records,
        "n_agents": trajectory.n_agents,
        "times": trajectory.times.astype("<i8").tobytes(),
        "states": trajectory.states.astype("<f8").tobytes(),
    }
    path.write_bytes(msgpack.packb(payload, use_bin_type=True))
    return path


def read_trajectory_binary(path: Path) -> Trajectory:
    try:
        payload = msgpack.unpackb(Path(path).read_bytes(), raw=False)
    except (OSError, ValueError, msgpack.exceptions.ExtraData) as e:
        raise FormatError(f"{path}: {e}") from e

    if not isinstance(payload, dict) or payload.get("format") != BINARY_FORMAT:
        raise FormatError(f"{path}: not a trajectory container")
    if payload.get("version") != BINARY_VERSION:
        raise FormatError(f"{path}: unsupported version {payload.get('version')}")

    try:
        n_records, n_agents = int(payload["n_records"]), int(payload["n_agents"])
        times = np.frombuffer(payload["times"], dtype="<i8").astype(np.int64)
        states = np.frombuffer(payload["states"], dtype="<f8").astype(np.float64)
        return Trajectory(times=times, states=states.reshape(n_records, n_agents, 4))
    except (KeyError, TypeError, ValueError) as e:
        raise FormatError(f"{path}: corrupt trajectory payload ({e})") from e


def write_trajectory(trajectory: Trajectory, path: Path) -> Path:
    """Format chosen by suffix: .msgpack/.bin binary, anything else CSV"""
    path = Path(path)
    if path.suffix in BINARY_SUFFIXES:
        written = write_trajectory_binary(trajectory, path)
    else:
        written = write_trajectory_csv(trajectory, path)
    logger.info(f"Wrote {trajectory.n_records} records to {written}")
    return written


def read_trajectory(path: Path) -> Trajectory:
    path = Path(path)
    if not path.exists():
        raise FormatError(f"{path}: no such file")
    if path.suffix in BINARY_SUFFIXES:
        return read_trajectory_binary(path)
    return read_trajectory_csv(path)
