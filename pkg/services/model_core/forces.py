"""
Social and individual forces of the vision-based model

Forces are Riemann sums over the retina. Area terms sample the cos/sin
masks at pixel centers; edge terms use the forward difference D[k], which
sits on the border between pixels k and k+1, and sample the masks there.
"""

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from shared.models import ForcePair, ModelParams, VisualField


@dataclass(frozen=True)
class RetinaMasks:
    """Trigonometric masks of an n_ret-pixel retina"""
    centers: np.ndarray
    cos_center: np.ndarray
    sin_center: np.ndarray
    cos_edge: np.ndarray
    sin_edge: np.ndarray


@lru_cache(maxsize=16)
def retina_masks(n_ret: int) -> RetinaMasks:
    delta_phi = 2 * math.pi / n_ret
    # offsets from phi = 0 in pixel units, so mirrored samples are exact negatives
    k = np.arange(n_ret, dtype=np.float64) - n_ret / 2
    centers = (k + 0.5) * delta_phi
    edges = (k + 1.0) * delta_phi
    sin_edge = np.sin(edges)
    sin_edge[-1] = 0.0  # seam at +-pi
    arrays = [centers, np.cos(centers), np.sin(centers), np.cos(edges), sin_edge]
    for array in arrays:
        array.setflags(write=False)
    return RetinaMasks(*arrays)


def pixel_centers(n_ret: int) -> np.ndarray:
    return retina_masks(n_ret).centers


def individual_force(v: float, params: ModelParams) -> float:
    """Relaxation towards the preferred speed"""
    return params.gamma * (params.v0 - v)


def field_derivative(field: VisualField) -> np.ndarray:
    """Circular forward difference of the field, divided by the pixel width"""
    values = field.values.astype(np.float64)
    return (np.roll(values, -1) - values) / field.delta_phi


def social_forces(field: VisualField, params: ModelParams) -> ForcePair:
    """Acceleration and turning rate caused by the visual field (full circle)"""
    values = field.values.astype(np.float64)
    if not values.any():
        return ForcePair(dv=0.0, dpsi=0.0)

    masks = retina_masks(field.n_ret)
    delta_phi = field.delta_phi
    edges = field_derivative(field) ** 2

    area_v = -np.dot(masks.cos_center, values)
    area_psi = -np.dot(masks.sin_center, values)
    edge_v = np.dot(masks.cos_edge, edges)
    edge_psi = np.dot(masks.sin_edge, edges)

    dv = params.alpha0 * (area_v + params.alpha1 * edge_v) * delta_phi
    dpsi = params.beta0 * (area_psi + params.beta1 * edge_psi) * delta_phi
    return ForcePair(dv=float(dv), dpsi=float(dpsi))


def total_forces(field: VisualField, v: float, params: ModelParams) -> ForcePair:
    """Self-propulsion plus social response of one agent"""
    social = social_forces(field, params)
    return ForcePair(dv=individual_force(v, params) + social.dv, dpsi=social.dpsi)
