"""Parameter and configuration schemas"""

import math
from typing import Literal

from pydantic import BaseModel, ConfigDict, Field, field_validator


class ModelParams(BaseModel):
    """Vision-based model parameters - defaults are the reference desk-scale set"""
    model_config = ConfigDict(frozen=True)

    gamma: float = Field(default=0.1, gt=0)  # relaxation rate towards v0
    v0: float = 1.0  # preferred speed, px/ts
    alpha0: float = 1.0  # acceleration response amplitude
    alpha1: float = 0.09  # front-back equilibrium control
    beta0: float = 0.5  # turning response amplitude
    beta1: float = 0.09  # left-right equilibrium control
    radius: float = Field(default=5.5, gt=0)  # half body length, px
    n_ret: int = Field(default=320, ge=4)  # retina pixels
    fov_half: float = Field(default=math.pi, ge=0, le=math.pi)  # active FOV: [-fov_half, fov_half]
    vision_range: float = Field(default=2000.0, gt=0)  # px

    @field_validator("n_ret")
    @classmethod
    def _n_ret_even(cls, value: int) -> int:
        if value % 2:
            raise ValueError("n_ret must be even")
        return value

    @property
    def delta_phi(self) -> float:
        return 2 * math.pi / self.n_ret

    @property
    def body_length(self) -> float:
        return 2 * self.radius


class Arena(BaseModel):
    """Rectangular arena with either periodic or reflective boundaries"""
    model_config = ConfigDict(frozen=True)

    width: float = Field(default=900.0, gt=0)
    height: float = Field(default=900.0, gt=0)
    boundary: Literal["periodic", "reflective"] = "periodic"

    @property
    def periodic(self) -> bool:
        return self.boundary == "periodic"


class SimConfig(BaseModel):
    """Everything that determines one simulation run"""
    model_config = ConfigDict(frozen=True)

    params: ModelParams = Field(default_factory=ModelParams)
    arena: Arena = Field(default_factory=Arena)
    n_agents: int = Field(default=10, ge=1)
    t_max: int = Field(default=20000, ge=1)
    dt: float = Field(default=1.0, gt=0)
    seed: int = Field(default=0, ge=0, lt=2**64)
    record_stride: int = Field(default=20, ge=1)
    init_mode: Literal["uniform", "polarized"] = "uniform"
    init_heading: float = 0.0  # used by polarized init only
    reflection_choice: Literal["ordered", "random"] = "ordered"


class SweepSpec(BaseModel):
    """Grid of (alpha0, beta0, FOV) cells, each repeated with derived seeds"""
    model_config = ConfigDict(frozen=True)

    alpha0_values: list[float] = Field(min_length=1)
    beta0_values: list[float] = Field(min_length=1)
    fov_fractions: list[float] = Field(min_length=1)  # fractions of 2*pi
    repetitions: int = Field(default=20, ge=1)
    base: SimConfig = Field(default_factory=SimConfig)
    window: float = Field(default=0.25, gt=0, le=1)  # trailing analysis window

    @field_validator("fov_fractions")
    @classmethod
    def _fractions_in_unit_interval(cls, values: list[float]) -> list[float]:
        for value in values:
            if not 0 <= value <= 1:
                raise ValueError(f"FOV fraction {value} outside [0, 1]")
        return values

    @property
    def n_runs(self) -> int:
        return (
            len(self.alpha0_values) * len(self.beta0_values)
            * len(self.fov_fractions) * self.repetitions
        )
