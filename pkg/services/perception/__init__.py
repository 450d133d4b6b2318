"""Perception: visual projection fields from geometry or detection boxes"""

from services.perception.detections import filter_boxes, recover_partial_box, vpf_from_boxes
from services.perception.vpf import (
    angular_interval,
    apply_visibility_cutoff,
    build_vpf,
    limit_fov,
    nearest_torus_image,
    pair_field,
    rasterize,
    wrap_to_pi,
)

__all__ = [
    "angular_interval",
    "apply_visibility_cutoff",
    "build_vpf",
    "filter_boxes",
    "limit_fov",
    "nearest_torus_image",
    "pair_field",
    "rasterize",
    "recover_partial_box",
    "vpf_from_boxes",
    "wrap_to_pi",
]
