"""Vision-based model: forces and state integration"""

from services.model_core.equilibrium import find_equilibrium_distance
from services.model_core.forces import (
    field_derivative,
    individual_force,
    pixel_centers,
    social_forces,
    total_forces,
)
from services.model_core.kinematics import integrate_step

__all__ = [
    "field_derivative",
    "find_equilibrium_distance",
    "individual_force",
    "integrate_step",
    "pixel_centers",
    "social_forces",
    "total_forces",
]
