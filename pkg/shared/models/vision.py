"""Visual projection field schemas"""

import math

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator


class VisualField(BaseModel):
    """Binary retina over [-pi, pi); pixel k spans [-pi + k*dphi, -pi + (k+1)*dphi)"""
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    values: np.ndarray

    @field_validator("values")
    @classmethod
    def _binary_vector(cls, values: np.ndarray) -> np.ndarray:
        values = np.asarray(values)
        if values.ndim != 1:
            raise ValueError("visual field must be one-dimensional")
        if not np.isin(values, (0, 1)).all():
            raise ValueError("visual field must be binary")
        values = values.astype(np.uint8)
        values.setflags(write=False)
        return values

    @classmethod
    def empty(cls, n_ret: int) -> "VisualField":
        return cls(values=np.zeros(n_ret, dtype=np.uint8))

    @property
    def n_ret(self) -> int:
        return int(self.values.shape[0])

    @property
    def delta_phi(self) -> float:
        return 2 * math.pi / self.n_ret

    def mirrored(self) -> "VisualField":
        """Field reflected about phi = 0 (reversed pixel order)"""
        return VisualField(values=self.values[::-1].copy())

    def to_text(self) -> str:
        """Debug dump, one 'index value' line per pixel"""
        return "".join(f"{k} {int(value)}\n" for k, value in enumerate(self.values))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, VisualField):
            return NotImplemented
        return bool(np.array_equal(self.values, other.values))

    __hash__ = None  # type: ignore[assignment]


class BlobInterval(BaseModel):
    """Angular extent of one visible agent, relative to the focal heading"""
    model_config = ConfigDict(frozen=True)

    source: int  # agent (or detection box) index
    phi_lo: float
    phi_hi: float
    distance: float | None = Field(default=None, gt=0)  # None for detection-box blobs

    @model_validator(mode="after")
    def _width_in_range(self) -> "BlobInterval":
        # agent silhouettes never exceed pi, recovered detection boxes may
        limit = math.pi if self.distance is not None else 2 * math.pi
        if not 0 < self.width <= limit + 1e-12:
            raise ValueError(f"interval width {self.width} outside (0, {limit}]")
        return self

    @property
    def width(self) -> float:
        return self.phi_hi - self.phi_lo


class DetectionBox(BaseModel):
    """Bounding box of a detected peer on a camera frame"""
    model_config = ConfigDict(frozen=True)

    x_min: float
    x_max: float
    height: float = Field(gt=0)
    frame_width: float = Field(gt=0)

    @property
    def width(self) -> float:
        return self.x_max - self.x_min
