"""Synchronous explicit Euler update of agent states"""

import math

from shared.models import AgentState, ForcePair
from shared.models.state import wrap_heading


def integrate_step(
    states: list[AgentState], forces: list[ForcePair], dt: float = 1.0
) -> list[AgentState]:
    """Speed and heading first, then displacement along the new heading"""
    if len(states) != len(forces):
        raise ValueError(f"{len(states)} states but {len(forces)} force pairs")
    if dt <= 0:
        raise ValueError("dt must be positive")

    updated = []
    for state, force in zip(states, forces):
        v = state.v + force.dv * dt
        psi = wrap_heading(state.psi + force.dpsi * dt)
        updated.append(
            AgentState(
                x=state.x + v * math.cos(psi) * dt,
                y=state.y + v * math.sin(psi) * dt,
                psi=psi,
                v=v,
            )
        )
    return updated
