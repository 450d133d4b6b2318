"""Simulation engine: seeding, initialization, stepping and trajectory files"""

from services.engine.simulation import init_population, make_rng, run, states_array, step
from services.engine.trajectory_io import (
    read_trajectory,
    read_trajectory_binary,
    read_trajectory_csv,
    write_trajectory,
    write_trajectory_binary,
    write_trajectory_csv,
)

__all__ = [
    "init_population",
    "make_rng",
    "read_trajectory",
    "read_trajectory_binary",
    "read_trajectory_csv",
    "run",
    "states_array",
    "step",
    "write_trajectory",
    "write_trajectory_binary",
    "write_trajectory_csv",
]
