"""
Synchronous simulation loop

Every agent perceives the same frozen snapshot of the previous step, then
all agents are integrated together and passed through the boundary rule.
A run is fully determined by its config and run index.
"""

import logging
import math

import numpy as np

from services.environment import reflect_if_needed, wrap_periodic
from services.model_core import integrate_step, total_forces
from services.perception import build_vpf
from shared.models import AgentState, SimConfig, Trajectory
from shared.models.records import STATE_COLUMNS

logger = logging.getLogger(__name__)


def make_rng(seed: int, run_index: int = 0) -> np.random.Generator:
    """Independent PCG64 stream per (seed, run_index)"""
    sequence = np.random.SeedSequence(seed, spawn_key=(run_index,))
    return np.random.Generator(np.random.PCG64(sequence))


def init_population(config: SimConfig, rng: np.random.Generator) -> list[AgentState]:
    """Uniform positions in the arena, no two exactly coincident"""
    arena = config.arena
    positions: list[tuple[float, float]] = []
    while len(positions) < config.n_agents:
        candidate = (float(rng.uniform(0, arena.width)), float(rng.uniform(0, arena.height)))
        if candidate not in positions:
            positions.append(candidate)

    if config.init_mode == "polarized":
        headings = [config.init_heading] * config.n_agents
    else:
        headings = [float(psi) for psi in rng.uniform(0, 2 * math.pi, config.n_agents)]

    return [
        AgentState(x=x, y=y, psi=psi, v=config.params.v0)
        for (x, y), psi in zip(positions, headings)
    ]


def step(
    states: list[AgentState], config: SimConfig, rng: np.random.Generator | None = None
) -> list[AgentState]:
    """Advance all agents by one timestep"""
    params, arena = config.params, config.arena
    forces = [
        total_forces(build_vpf(index, states, arena, params), state.v, params)
        for index, state in enumerate(states)
    ]
    proposed = integrate_step(states, forces, config.dt)

    if arena.periodic:
        updated = []
        for state in proposed:
            x, y = wrap_periodic(state.position, arena)
            updated.append(AgentState(x=x, y=y, psi=state.psi, v=state.v))
        return updated

    choice_rng = rng if config.reflection_choice == "random" else None
    return [
        reflect_if_needed(previous, candidate, arena, config.dt, choice_rng)
        for previous, candidate in zip(states, proposed)
    ]


def states_array(states: list[AgentState]) -> np.ndarray:
    return np.array([[getattr(state, column) for column in STATE_COLUMNS] for state in states])


def run(
    config: SimConfig,
    run_index: int = 0,
    initial: list[AgentState] | None = None,
) -> Trajectory:
    """Simulate t_max steps, recording every record_stride steps from t = 0"""
    rng = make_rng(config.seed, run_index)
    states = initial if initial is not None else init_population(config, rng)
    if len(states) != config.n_agents:
        raise ValueError(f"expected {config.n_agents} initial states, got {len(states)}")

    times = [0]
    blocks = [states_array(states)]
    for t in range(1, config.t_max + 1):
        states = step(states, config, rng)
        if t % config.record_stride == 0:
            times.append(t)
            blocks.append(states_array(states))

    logger.info(
        f"Run seed={config.seed} index={run_index} done: "
        f"{config.t_max} steps, {len(times)} records"
    )
    return Trajectory(times=np.array(times, dtype=np.int64), states=np.stack(blocks))
