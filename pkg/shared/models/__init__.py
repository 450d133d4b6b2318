"""Domain types for the vision swarm platform"""

from shared.models.config import Arena, ModelParams, SimConfig, SweepSpec
from shared.models.records import MetricsRecord, Trajectory
from shared.models.state import AgentState, ForcePair, Position
from shared.models.vision import BlobInterval, DetectionBox, VisualField

__all__ = [
    "AgentState",
    "Arena",
    "BlobInterval",
    "DetectionBox",
    "ForcePair",
    "MetricsRecord",
    "ModelParams",
    "Position",
    "SimConfig",
    "SweepSpec",
    "Trajectory",
    "VisualField",
]
