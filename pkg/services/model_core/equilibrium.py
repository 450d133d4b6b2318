"""Equilibrium distances: where a lone peer's social force changes sign"""

import logging
from collections.abc import Callable
from typing import Literal

import numpy as np

from services.model_core.forces import social_forces
from shared.errors import NoSignChange
from shared.models import ModelParams, VisualField

logger = logging.getLogger(__name__)

Axis = Literal["front-back", "left-right"]

SCAN_POINTS = 400


def find_equilibrium_distance(
    axis: Axis,
    params: ModelParams,
    field_at: Callable[[float], VisualField],
    d_min: float | None = None,
    d_max: float | None = None,
    tol: float = 1e-3,
) -> float:
    """
    Zero crossing of dv (front-back) or dpsi (left-right) in peer distance

    field_at(d) returns the focal agent's field with one peer at distance d on
    the requested axis. The force is a step function of d, so a geometric scan
    brackets the first strict sign change and bisection narrows it to tol.
    """
    lo = 2 * params.radius if d_min is None else d_min
    hi = params.vision_range if d_max is None else d_max
    if not 0 < lo < hi:
        raise ValueError(f"invalid search interval ({lo}, {hi})")

    def force(distance: float) -> float:
        pair = social_forces(field_at(distance), params)
        return pair.dv if axis == "front-back" else pair.dpsi

    bracket = None
    previous = None
    for distance in np.geomspace(lo, hi, SCAN_POINTS):
        value = force(float(distance))
        if value == 0.0:
            continue
        if previous is not None and np.sign(value) != np.sign(previous[1]):
            bracket = (previous[0], float(distance), np.sign(previous[1]))
            break
        previous = (float(distance), value)

    if bracket is None:
        raise NoSignChange(f"{axis} force keeps its sign on ({lo:.3f}, {hi:.3f}) px")

    a, b, sign_a = bracket
    while b - a > tol:
        mid = 0.5 * (a + b)
        value = force(mid)
        if value != 0.0 and np.sign(value) == sign_a:
            a = mid
        else:
            b = mid
    result = 0.5 * (a + b)
    logger.debug(f"{axis} equilibrium distance {result:.4f} px")
    return result
