"""Replay of recorded detection boxes through the vision-based model"""

import logging
import math
from pathlib import Path

import pandas as pd
from pydantic import ValidationError

from services.model_core import social_forces
from services.perception import vpf_from_boxes
from shared.errors import FormatError, MalformedBox
from shared.models import DetectionBox, ModelParams

logger = logging.getLogger(__name__)

BOX_COLUMNS = ["frame", "x_min", "x_max", "height", "frame_width"]
DEFAULT_CAMERA_FOV = math.radians(175)


def load_boxes(path: Path) -> pd.DataFrame:
    try:
        table = pd.read_csv(path)
    except (OSError, pd.errors.ParserError, pd.errors.EmptyDataError) as e:
        raise FormatError(f"{path}: {e}") from e
    missing = [column for column in BOX_COLUMNS if column not in table.columns]
    if missing:
        raise FormatError(f"{path}: missing columns {missing}")
    return table


def replay_boxes(
    table: pd.DataFrame, camera_fov: float = DEFAULT_CAMERA_FOV, params: ModelParams | None = None
) -> pd.DataFrame:
    """Per frame: number of boxes, visible pixels and the resulting social forces"""
    params = params or ModelParams()
    rows = []
    for frame_id, group in table.groupby("frame", sort=True):
        try:
            boxes = [
                DetectionBox(
                    x_min=row.x_min, x_max=row.x_max, height=row.height, frame_width=row.frame_width
                )
                for row in group.itertuples(index=False)
            ]
        except ValidationError as e:
            raise MalformedBox(f"frame {frame_id}: {e}") from e
        field = vpf_from_boxes(boxes, camera_fov, params.n_ret)
        forces = social_forces(field, params)
        rows.append({
            "frame": frame_id,
            "n_boxes": len(boxes),
            "visible_pixels": int(field.values.sum()),
            "dv": forces.dv,
            "dpsi": forces.dpsi,
        })
    logger.info(f"Replayed {len(rows)} frames")
    return pd.DataFrame(rows, columns=["frame", "n_boxes", "visible_pixels", "dv", "dpsi"])
