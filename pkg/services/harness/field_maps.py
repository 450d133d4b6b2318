"""Pairwise force landscapes and equilibrium distances of a parameter set"""

import logging
import math

import numpy as np
import pandas as pd

from services.model_core import find_equilibrium_distance, social_forces
from services.perception import pair_field
from shared.errors import NoSignChange
from shared.models import ModelParams

logger = logging.getLogger(__name__)

AXIS_BEARINGS = {"front-back": 0.0, "left-right": math.pi / 2}


def equilibrium_distances(
    params: ModelParams, d_min: float | None = None, d_max: float | None = None
) -> dict[str, float | None]:
    """Front-back and left-right zero crossings; None where the force never flips"""
    distances: dict[str, float | None] = {}
    for axis, bearing in AXIS_BEARINGS.items():
        try:
            distances[axis] = find_equilibrium_distance(
                axis,
                params,
                lambda d, bearing=bearing: pair_field(d, bearing, params),
                d_min=d_min,
                d_max=d_max,
            )
        except NoSignChange as e:
            logger.warning(str(e))
            distances[axis] = None
    return distances


def force_field_map(
    params: ModelParams, extent: float = 100.0, resolution: int = 41
) -> pd.DataFrame:
    """
    Social force on a focal agent at the origin (heading +x) from one peer at each grid point

    The grid spans [-extent, extent] on both axes with the full field of view;
    points within one radius of the origin are NaN.
    """
    if extent <= 0 or resolution < 2:
        raise ValueError("force map needs a positive extent and at least two points per axis")
    full_view = params.model_copy(update={"fov_half": math.pi})
    axis = np.linspace(-extent, extent, resolution)

    rows = []
    for y in axis:
        for x in axis:
            distance = math.hypot(x, y)
            if distance <= params.radius:
                rows.append((x, y, np.nan, np.nan))
                continue
            forces = social_forces(pair_field(distance, math.atan2(y, x), full_view), full_view)
            rows.append((x, y, forces.dv, forces.dpsi))
    return pd.DataFrame(rows, columns=["x", "y", "dv", "dpsi"])
