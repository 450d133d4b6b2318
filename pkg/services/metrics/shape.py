"""Group shape: convex hull circularity"""

import logging
import math

import numpy as np
from scipy.spatial import ConvexHull, QhullError

from shared.errors import DegenerateInput
from shared.models import Arena

logger = logging.getLogger(__name__)


def unwrap_positions(positions: np.ndarray, arena: Arena) -> np.ndarray:
    """Minimal-image copies around the per-axis circular mean of the group"""
    positions = np.asarray(positions, dtype=np.float64)
    if not arena.periodic:
        return positions
    size = np.array([arena.width, arena.height])
    angles = positions / size * 2 * math.pi
    center = np.arctan2(np.sin(angles).mean(axis=0), np.cos(angles).mean(axis=0))
    center = center / (2 * math.pi) * size
    offset = positions - center
    return center + offset - size * np.floor(offset / size + 0.5)


def hull_diameter(vertices: np.ndarray) -> float:
    """Largest distance between non-adjacent hull vertices (any pair for triangles)"""
    n_hull = len(vertices)
    best = 0.0
    for i in range(n_hull):
        for j in range(i + 1, n_hull):
            if n_hull > 3 and not 1 < j - i < n_hull - 1:
                continue
            best = max(best, float(np.hypot(*(vertices[i] - vertices[j]))))
    return best


def shoelace_area(vertices: np.ndarray) -> float:
    x, y = vertices[:, 0], vertices[:, 1]
    return 0.5 * abs(float(np.dot(x, np.roll(y, -1)) - np.dot(np.roll(x, -1), y)))


def circularity(positions: np.ndarray) -> float:
    """Hull area over the area of a circle with the hull's diameter, in [0, 1]"""
    positions = np.asarray(positions, dtype=np.float64)
    if positions.shape[0] < 3:
        raise DegenerateInput("circularity needs at least three agents")
    try:
        hull = ConvexHull(positions)
    except QhullError:
        logger.debug(f"Degenerate hull for {positions.shape[0]} points, circularity 0")
        return 0.0  # collinear or coincident

    vertices = positions[hull.vertices]  # counterclockwise in 2D
    diameter = hull_diameter(vertices)
    if diameter == 0.0:
        return 0.0
    rca = 4 * shoelace_area(vertices) / (math.pi * diameter**2)
    return float(min(1.0, max(0.0, rca)))
