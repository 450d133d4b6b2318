"""Trajectory and metrics record schemas"""

import numpy as np
import pandas as pd
from pydantic import BaseModel, ConfigDict, Field, model_validator

from shared.models.state import AgentState

STATE_COLUMNS = ["x", "y", "psi", "v"]


class MetricsRecord(BaseModel):
    """Collective metrics of one recorded timestep"""
    model_config = ConfigDict(frozen=True)

    t: int
    P: float = Field(ge=0, le=1)
    D_mean: float | None = Field(default=None, ge=0)  # None with a single agent
    RCA: float | None = Field(default=None, ge=0, le=1)  # None below three agents
    N_clus_max: int = Field(ge=1)
    overlap_count: int = Field(default=0, ge=0)


class Trajectory(BaseModel):
    """Recorded states, shape (records, agents, 4) with columns x, y, psi, v"""
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    times: np.ndarray
    states: np.ndarray

    @model_validator(mode="after")
    def _consistent(self) -> "Trajectory":
        if self.times.ndim != 1 or self.states.ndim != 3 or self.states.shape[2] != 4:
            raise ValueError("trajectory arrays have the wrong shape")
        if self.states.shape[0] != self.times.shape[0]:
            raise ValueError("one state block per recorded time expected")
        if np.any(np.diff(self.times) <= 0):
            raise ValueError("recorded times must be strictly increasing")
        return self

    @property
    def n_records(self) -> int:
        return int(self.times.shape[0])

    @property
    def n_agents(self) -> int:
        return int(self.states.shape[1])

    @property
    def positions(self) -> np.ndarray:
        return self.states[:, :, 0:2]

    @property
    def headings(self) -> np.ndarray:
        return self.states[:, :, 2]

    def agents_at(self, index: int) -> list[AgentState]:
        return [AgentState(x=x, y=y, psi=psi, v=v) for x, y, psi, v in self.states[index]]

    def window(self, fraction: float) -> "Trajectory":
        """Trailing share of the records, at least one"""
        start = min(self.n_records - 1, int(np.floor(self.n_records * (1 - fraction))))
        return Trajectory(times=self.times[start:], states=self.states[start:])

    def to_frame(self) -> pd.DataFrame:
        """Long format: one row per (t, agent_id)"""
        n_records, n_agents, _ = self.states.shape
        frame = pd.DataFrame(self.states.reshape(-1, 4), columns=STATE_COLUMNS)
        frame.insert(0, "agent_id", np.tile(np.arange(n_agents), n_records))
        frame.insert(0, "t", np.repeat(self.times, n_agents))
        return frame

    @classmethod
    def from_frame(cls, frame: pd.DataFrame) -> "Trajectory":
        frame = frame.sort_values(["t", "agent_id"], kind="stable")
        times = np.unique(frame["t"].to_numpy(dtype=np.int64))
        n_agents = int(frame["agent_id"].nunique())
        if len(frame) != len(times) * n_agents:
            raise ValueError("every recorded time needs one row per agent")
        states = frame[STATE_COLUMNS].to_numpy(dtype=np.float64).reshape(len(times), n_agents, 4)
        return cls(times=times, states=states)
