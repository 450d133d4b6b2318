"""Boundary conditions: periodic wrapping and reflective walls"""

import logging
import math

import numpy as np

from shared.models import AgentState, Arena, Position
from shared.models.state import wrap_heading

logger = logging.getLogger(__name__)


def _wrap_coordinate(value: float, size: float) -> float:
    wrapped = value % size
    return 0.0 if wrapped >= size else wrapped


def wrap_periodic(pos: Position, arena: Arena) -> Position:
    """Map a position into [0, W) x [0, H)"""
    return (_wrap_coordinate(pos[0], arena.width), _wrap_coordinate(pos[1], arena.height))


def inside(x: float, y: float, arena: Arena) -> bool:
    return 0.0 <= x <= arena.width and 0.0 <= y <= arena.height


def reflect_if_needed(
    previous: AgentState,
    proposed: AgentState,
    arena: Arena,
    dt: float = 1.0,
    rng: np.random.Generator | None = None,
) -> AgentState:
    """
    Turn an agent that would leave the arena back orthogonally to its heading

    `proposed` is the integrated candidate for this step. If it lies outside
    the walls, its vision-based turn is discarded: the new heading is the
    previous one +pi/2 or -pi/2 (in that order, or shuffled by `rng`),
    whichever keeps the displaced position inside both bounds, else
    previous + pi. The displacement uses the candidate's signed speed.
    """
    if inside(proposed.x, proposed.y, arena):
        return proposed

    turns = [math.pi / 2, -math.pi / 2]
    if rng is not None and rng.random() < 0.5:
        turns.reverse()
    turns.append(math.pi)

    for turn in turns:
        psi = wrap_heading(previous.psi + turn)
        x = previous.x + proposed.v * math.cos(psi) * dt
        y = previous.y + proposed.v * math.sin(psi) * dt
        if inside(x, y, arena):
            return AgentState(x=x, y=y, psi=psi, v=proposed.v)

    # a step longer than the arena fits no heading; stay on the wall
    logger.warning(f"Step of {abs(proposed.v * dt):.2f} px fits no reflected heading, clamping")
    return AgentState(
        x=min(max(x, 0.0), arena.width),
        y=min(max(y, 0.0), arena.height),
        psi=psi,
        v=proposed.v,
    )
