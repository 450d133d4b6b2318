"""
Visual projection field construction

Each other agent becomes an angular interval on the focal retina. Intervals
are filtered by size and range, restricted to the active field of view
(keeping partially visible blobs whole) and rasterized onto pixel centers.
Overlapping intervals simply merge, which is how occlusion shows up.
"""

import math

import numpy as np

from services.model_core.forces import pixel_centers
from shared.errors import CoincidentAgents
from shared.models import AgentState, Arena, BlobInterval, ModelParams, Position, VisualField
from shared.models.state import TWO_PI


def wrap_to_pi(angle: float) -> float:
    """Map an angle into (-pi, pi]"""
    return math.pi - ((math.pi - angle) % TWO_PI)


def nearest_torus_image(focal: Position, other: Position, arena: Arena) -> Position:
    """Copy of `other` (original or one of its eight shifts) closest to `focal`"""
    best = other
    best_d2 = math.inf
    for dx in (0.0, -arena.width, arena.width):
        for dy in (0.0, -arena.height, arena.height):
            x, y = other[0] + dx, other[1] + dy
            d2 = (x - focal[0]) ** 2 + (y - focal[1]) ** 2
            if d2 < best_d2:
                best, best_d2 = (x, y), d2
    return best


def angular_interval(
    focal: AgentState,
    other_pos: Position,
    radius: float,
    source: int = 0,
    focal_index: int | None = None,
) -> BlobInterval:
    """Angle subtended by a disc of `radius` centered at other_pos"""
    dx = other_pos[0] - focal.x
    dy = other_pos[1] - focal.y
    distance = math.hypot(dx, dy)
    if distance == 0.0:
        raise CoincidentAgents(focal_index, source)

    bearing = wrap_to_pi(math.atan2(dy, dx) - focal.psi)
    half_width = math.asin(min(1.0, radius / distance))
    return BlobInterval(
        source=source,
        phi_lo=bearing - half_width,
        phi_hi=bearing + half_width,
        distance=distance,
    )


def rasterize(intervals: list[BlobInterval], n_ret: int) -> VisualField:
    """Pixel k is set iff its center falls inside any interval (circularly)"""
    if not intervals:
        return VisualField.empty(n_ret)
    lows = np.array([interval.phi_lo for interval in intervals])
    widths = np.array([interval.width for interval in intervals])
    offsets = np.mod(pixel_centers(n_ret)[None, :] - lows[:, None], TWO_PI)
    values = (offsets <= widths[:, None]).any(axis=0)
    return VisualField(values=values.astype(np.uint8))


def apply_visibility_cutoff(
    intervals: list[BlobInterval], params: ModelParams
) -> list[BlobInterval]:
    """Drop blobs narrower than one retina pixel and sources beyond vision range"""
    return [
        interval
        for interval in intervals
        if interval.width >= params.delta_phi
        and (interval.distance is None or interval.distance <= params.vision_range)
    ]


def limit_fov(intervals: list[BlobInterval], fov_half: float) -> list[BlobInterval]:
    """
    Keep blobs that touch [-fov_half, fov_half], in their full extent

    A blob reaching into the active field is recovered whole, even the part
    beyond the limit. With fov_half == 0 the agent is blind.
    """
    if fov_half >= math.pi:
        return list(intervals)
    if fov_half <= 0:
        return []

    kept = []
    for interval in intervals:
        for shift in (0.0, -TWO_PI, TWO_PI):
            if interval.phi_lo + shift <= fov_half and interval.phi_hi + shift >= -fov_half:
                kept.append(interval)
                break
    return kept


def build_vpf(
    focal_index: int, states: list[AgentState], arena: Arena, params: ModelParams
) -> VisualField:
    """Visual field of one agent over an immutable snapshot of all agents"""
    focal = states[focal_index]
    intervals = []
    for index, other in enumerate(states):
        if index == focal_index:
            continue
        position = other.position
        if arena.periodic:
            position = nearest_torus_image(focal.position, position, arena)
        intervals.append(
            angular_interval(focal, position, params.radius, source=index, focal_index=focal_index)
        )

    intervals = apply_visibility_cutoff(intervals, params)
    intervals = limit_fov(intervals, params.fov_half)
    return rasterize(intervals, params.n_ret)


def pair_field(distance: float, bearing: float, params: ModelParams) -> VisualField:
    """Field of a focal agent at the origin, heading +x, with one peer at (distance, bearing)"""
    focal = AgentState(x=0.0, y=0.0, psi=0.0, v=params.v0)
    other = (distance * math.cos(bearing), distance * math.sin(bearing))
    intervals = apply_visibility_cutoff([angular_interval(focal, other, params.radius)], params)
    return rasterize(limit_fov(intervals, params.fov_half), params.n_ret)
