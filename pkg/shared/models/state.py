"""Agent state and force schemas"""

import math

from pydantic import BaseModel, ConfigDict, field_validator

Position = tuple[float, float]

TWO_PI = 2 * math.pi


def wrap_heading(psi: float) -> float:
    """Map an angle into [0, 2*pi)"""
    wrapped = psi % TWO_PI
    # -1e-18 % 2pi rounds up to exactly 2pi
    return 0.0 if wrapped >= TWO_PI else wrapped


class AgentState(BaseModel):
    """Position, heading and signed speed of one disc agent"""
    model_config = ConfigDict(frozen=True)

    x: float
    y: float
    psi: float  # heading, always wrapped to [0, 2*pi)
    v: float  # signed speed, may go negative

    @field_validator("psi")
    @classmethod
    def _wrap_psi(cls, value: float) -> float:
        return wrap_heading(value)

    @property
    def position(self) -> Position:
        return (self.x, self.y)


class ForcePair(BaseModel):
    """Right-hand sides of the speed and heading equations"""
    model_config = ConfigDict(frozen=True)

    dv: float  # px/ts^2
    dpsi: float  # rad/ts

    @field_validator("dv", "dpsi")
    @classmethod
    def _finite(cls, value: float) -> float:
        if not math.isfinite(value):
            raise ValueError("force components must be finite")
        return value
