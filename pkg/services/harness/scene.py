"""Static scenes: agent placements for visual field dumps"""

from pathlib import Path

import pandas as pd
from pydantic import ValidationError

from shared.errors import FormatError
from shared.models import AgentState

SCENE_COLUMNS = ["x", "y", "psi"]


def load_scene(path: Path, v0: float = 1.0) -> list[AgentState]:
    """CSV with x, y, psi and optionally v per agent"""
    try:
        table = pd.read_csv(path)
    except (OSError, pd.errors.ParserError, pd.errors.EmptyDataError) as e:
        raise FormatError(f"{path}: {e}") from e
    missing = [column for column in SCENE_COLUMNS if column not in table.columns]
    if missing:
        raise FormatError(f"{path}: missing columns {missing}")
    if "v" not in table.columns:
        table = table.assign(v=v0)
    try:
        return [
            AgentState(x=row.x, y=row.y, psi=row.psi, v=row.v)
            for row in table.itertuples(index=False)
        ]
    except ValidationError as e:
        raise FormatError(f"{path}: {e}") from e
