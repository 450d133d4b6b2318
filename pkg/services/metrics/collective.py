"""Order, spacing and overlap metrics of a group"""

import numpy as np

from shared.errors import DegenerateInput
from shared.models import Arena, Trajectory


def unit_headings(headings: np.ndarray) -> np.ndarray:
    headings = np.asarray(headings, dtype=np.float64)
    return np.stack([np.cos(headings), np.sin(headings)], axis=-1)


def polarization(headings: np.ndarray | list[float]) -> float:
    """Length of the mean unit heading vector"""
    headings = np.asarray(headings, dtype=np.float64)
    if headings.size == 0:
        raise DegenerateInput("polarization needs at least one agent")
    total = unit_headings(headings).sum(axis=0)
    return float(min(1.0, np.hypot(total[0], total[1]) / headings.size))


def displacements(positions: np.ndarray, arena: Arena | None = None) -> np.ndarray:
    """Pairwise vectors x_j - x_i, minimal image on periodic arenas"""
    positions = np.asarray(positions, dtype=np.float64)
    diff = positions[None, :, :] - positions[:, None, :]
    if arena is not None and arena.periodic:
        size = np.array([arena.width, arena.height])
        diff -= size * np.floor(diff / size + 0.5)
    return diff


def pairwise_distances(positions: np.ndarray, arena: Arena | None = None) -> np.ndarray:
    diff = displacements(positions, arena)
    return np.hypot(diff[..., 0], diff[..., 1])


def mean_iid(positions: np.ndarray, arena: Arena | None = None) -> float:
    """Mean distance over all unordered pairs"""
    positions = np.asarray(positions, dtype=np.float64)
    n_agents = positions.shape[0]
    if n_agents < 2:
        raise DegenerateInput("mean inter-individual distance needs two agents")
    upper = np.triu_indices(n_agents, k=1)
    return float(pairwise_distances(positions, arena)[upper].mean())


def overlap_flags(positions: np.ndarray, radius: float, arena: Arena | None = None) -> np.ndarray:
    """Per agent: does any other agent sit closer than one body length"""
    distances = pairwise_distances(positions, arena)
    np.fill_diagonal(distances, np.inf)
    return (distances < 2 * radius).any(axis=1)


def overlap_ratio(
    trajectory: Trajectory | np.ndarray, radius: float, arena: Arena | None = None
) -> float:
    """
    Share of time agents spend overlapping, in percent

    Uses the 1/(2N) prefactor, so a group overlapping all the time scores 50.
    """
    positions = trajectory.positions if isinstance(trajectory, Trajectory) else trajectory
    positions = np.asarray(positions, dtype=np.float64)
    if positions.shape[0] == 0:
        raise DegenerateInput("overlap ratio needs at least one timestep")
    n_steps, n_agents = positions.shape[:2]
    flags = np.array([overlap_flags(frame, radius, arena) for frame in positions])
    per_agent = flags.sum(axis=0) / n_steps * 100
    return float(per_agent.sum() / (2 * n_agents))


def avoidance_ratio(flags: np.ndarray) -> float:
    """Share of time agents spend in avoidance mode, in percent (flags: steps x agents)"""
    flags = np.asarray(flags, dtype=bool)
    if flags.size == 0:
        raise DegenerateInput("avoidance ratio needs flags")
    return float(flags.mean() * 100)
