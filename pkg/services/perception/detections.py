"""Offline replay: detection boxes on a camera frame to a visual field"""

import logging
import math

from services.perception.vpf import rasterize
from shared.errors import MalformedBox
from shared.models import BlobInterval, DetectionBox, VisualField

logger = logging.getLogger(__name__)

MIN_BOX_PIXELS = 3.0
MAX_OVERLAP = 0.5


def _check_box(box: DetectionBox) -> None:
    if not 0 <= box.x_min <= box.x_max <= box.frame_width:
        raise MalformedBox(
            f"box [{box.x_min}, {box.x_max}] invalid for frame width {box.frame_width}"
        )


def _overlap_fraction(a: DetectionBox, b: DetectionBox) -> float:
    """Horizontal overlap relative to the narrower box"""
    overlap = min(a.x_max, b.x_max) - max(a.x_min, b.x_min)
    return max(0.0, overlap) / min(a.width, b.width)


def filter_boxes(boxes: list[DetectionBox]) -> list[DetectionBox]:
    """Drop boxes under 3 px, then the narrower box of any pair overlapping > 50%"""
    wide_enough = [box for box in boxes if box.width >= MIN_BOX_PIXELS]
    kept: list[DetectionBox] = []
    for box in sorted(wide_enough, key=lambda b: b.width, reverse=True):
        if all(_overlap_fraction(box, other) <= MAX_OVERLAP for other in kept):
            kept.append(box)
    dropped = len(boxes) - len(kept)
    if dropped:
        logger.debug(f"Filtered {dropped} of {len(boxes)} detection boxes")
    return kept


def recover_partial_box(box: DetectionBox) -> tuple[float, float]:
    """
    Horizontal bounds with a frame-edge box widened to a square

    Boxes are assumed square, so one clipped by the left or right frame edge
    is extended to width = height towards the outside of the frame.
    """
    x_lo, x_hi = box.x_min, box.x_max
    touches_left = box.x_min <= 0
    touches_right = box.x_max >= box.frame_width
    if box.height > box.width and touches_left != touches_right:
        if touches_left:
            x_lo = box.x_max - box.height
        else:
            x_hi = box.x_min + box.height
    return x_lo, x_hi


def vpf_from_boxes(boxes: list[DetectionBox], camera_fov: float, n_ret: int) -> VisualField:
    """Project boxes onto the horizontal axis; frame left maps to +camera_fov/2"""
    if not 0 < camera_fov <= 2 * math.pi:
        raise ValueError(f"camera_fov {camera_fov} outside (0, 2*pi]")
    for box in boxes:
        _check_box(box)

    intervals = []
    for index, box in enumerate(filter_boxes(boxes)):
        x_lo, x_hi = recover_partial_box(box)
        scale = camera_fov / box.frame_width
        phi_hi = camera_fov / 2 - x_lo * scale
        phi_lo = max(camera_fov / 2 - x_hi * scale, phi_hi - 2 * math.pi)
        intervals.append(BlobInterval(source=index, phi_lo=phi_lo, phi_hi=phi_hi))
    return rasterize(intervals, n_ret)
