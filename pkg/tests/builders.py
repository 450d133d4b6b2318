import math

import numpy as np

from shared.models import AgentState, Trajectory


def agent(x: float, y: float, psi: float = 0.0, v: float = 1.0) -> AgentState:
    return AgentState(x=x, y=y, psi=psi, v=v)


def pentagon(center: tuple[float, float], radius: float = 2.0) -> np.ndarray:
    angles = 2 * math.pi * np.arange(5) / 5
    return np.column_stack(
        [center[0] + radius * np.cos(angles), center[1] + radius * np.sin(angles)]
    )


def two_subgroups() -> tuple[np.ndarray, np.ndarray]:
    """Two tight pentagons 400 px apart, heading in opposite directions"""
    positions = np.vstack([pentagon((200.0, 450.0)), pentagon((600.0, 450.0))])
    headings = np.array([0.0] * 5 + [math.pi] * 5)
    return positions, headings


def parallel_pair(n_records: int = 10, stride: int = 20) -> Trajectory:
    """Two agents 100 px apart moving side by side along x"""
    times = np.arange(n_records) * stride
    states = np.zeros((n_records, 2, 4))
    states[:, :, 0] = (100.0 + times)[:, None]
    states[:, 0, 1] = 400.0
    states[:, 1, 1] = 500.0
    states[:, :, 3] = 1.0
    return Trajectory(times=times, states=states)


def frozen_snapshot(positions: np.ndarray, headings: np.ndarray, n_records: int = 4) -> Trajectory:
    """The same snapshot recorded n_records times"""
    block = np.column_stack([positions, headings, np.ones(len(positions))])
    return Trajectory(
        times=np.arange(n_records) * 20, states=np.repeat(block[None], n_records, axis=0)
    )
