"""Environment: arena boundary conditions"""

from services.environment.boundaries import inside, reflect_if_needed, wrap_periodic

__all__ = ["inside", "reflect_if_needed", "wrap_periodic"]
