"""
Run configuration files

Plain `KEY=value` lines using the reference variable names of the model,
plus harness keys. Blank lines and `#` comments are ignored; keys may appear
at most once. Missing keys fall back to the reference defaults.
"""

import logging
import math
from collections.abc import Callable
from pathlib import Path

from pydantic import ValidationError

from shared.errors import ParseError, RangeError
from shared.models import Arena, ModelParams, SimConfig

logger = logging.getLogger(__name__)

# key -> (section, field, converter)
CONFIG_KEYS: dict[str, tuple[str, str, Callable[[str], object]]] = {
    "ENV_WIDTH": ("arena", "width", float),
    "ENV_HEIGHT": ("arena", "height", float),
    "BOUNDARY": ("arena", "boundary", str),
    "VISUAL_FIELD_RESOLUTION": ("params", "n_ret", int),
    "RADIUS_AGENT": ("params", "radius", float),
    "VF_GAM": ("params", "gamma", float),
    "VF_V0": ("params", "v0", float),
    "VF_ALP0": ("params", "alpha0", float),
    "VF_ALP1": ("params", "alpha1", float),
    "VF_BET0": ("params", "beta0", float),
    "VF_BET1": ("params", "beta1", float),
    "AGENT_FOV": ("params", "fov_half", float),
    "VISION_RANGE": ("params", "vision_range", float),
    "T": ("run", "t_max", int),
    "N": ("run", "n_agents", int),
    "SEED": ("run", "seed", int),
    "DT": ("run", "dt", float),
    "RECORD_STRIDE": ("run", "record_stride", int),
    "INIT_MODE": ("run", "init_mode", str),
    "INIT_HEADING": ("run", "init_heading", float),
    "REFLECTION_CHOICE": ("run", "reflection_choice", str),
}

BOUNDARY_NAMES = {"torus": "periodic", "walls": "reflective"}
FIELD_KEYS = {(section, field): key for key, (section, field, _) in CONFIG_KEYS.items()}


def _split_line(line: str, line_no: int) -> tuple[str, str] | None:
    content = line.split("#", 1)[0].strip()
    if not content:
        return None
    if "=" not in content:
        raise ParseError(line_no, f"expected KEY=value, got {content!r}")
    key, value = (part.strip() for part in content.split("=", 1))
    if not key or not value:
        raise ParseError(line_no, f"empty key or value in {content!r}")
    return key, value


def _build(section: type, values: dict, section_name: str):
    try:
        return section(**values)
    except ValidationError as e:
        error = e.errors()[0]
        field = str(error["loc"][0]) if error["loc"] else "?"
        key = FIELD_KEYS.get((section_name, field), field)
        raise RangeError(f"{key}: {error['msg']}") from e


def parse_config(text: str) -> SimConfig:
    """Build a validated SimConfig from config text"""
    sections: dict[str, dict] = {"arena": {}, "params": {}, "run": {}}
    seen: dict[str, int] = {}

    for line_no, line in enumerate(text.splitlines(), start=1):
        parsed = _split_line(line, line_no)
        if parsed is None:
            continue
        key, raw = parsed
        if key not in CONFIG_KEYS:
            raise ParseError(line_no, f"unknown key {key}")
        if key in seen:
            raise ParseError(line_no, f"duplicate key {key} (first on line {seen[key]})")
        seen[key] = line_no

        section, field, convert = CONFIG_KEYS[key]
        try:
            value = convert(raw)
        except ValueError as e:
            raise ParseError(line_no, f"{key}: cannot read {raw!r}") from e

        if key == "BOUNDARY":
            if value not in BOUNDARY_NAMES:
                raise RangeError(f"BOUNDARY must be one of {sorted(BOUNDARY_NAMES)}, got {value}")
            value = BOUNDARY_NAMES[value]
        elif key == "AGENT_FOV":
            if not 0 <= value <= 1:
                raise RangeError(f"AGENT_FOV must be a fraction in [0, 1], got {value}")
            value = value * math.pi
        sections[section][field] = value

    params = _build(ModelParams, sections["params"], "params")
    arena = _build(Arena, sections["arena"], "arena")
    config = _build(SimConfig, {"params": params, "arena": arena, **sections["run"]}, "run")
    logger.debug(f"Parsed config with {len(seen)} explicit keys")
    return config


def render_config(config: SimConfig) -> str:
    """Canonical text form; parse_config(render_config(c)) == c"""
    params, arena = config.params, config.arena
    boundary = {name: key for key, name in BOUNDARY_NAMES.items()}[arena.boundary]
    values = {
        "ENV_WIDTH": arena.width,
        "ENV_HEIGHT": arena.height,
        "BOUNDARY": boundary,
        "VISUAL_FIELD_RESOLUTION": params.n_ret,
        "RADIUS_AGENT": params.radius,
        "VF_GAM": params.gamma,
        "VF_V0": params.v0,
        "VF_ALP0": params.alpha0,
        "VF_ALP1": params.alpha1,
        "VF_BET0": params.beta0,
        "VF_BET1": params.beta1,
        "AGENT_FOV": params.fov_half / math.pi,
        "VISION_RANGE": params.vision_range,
        "T": config.t_max,
        "N": config.n_agents,
        "SEED": config.seed,
        "DT": config.dt,
        "RECORD_STRIDE": config.record_stride,
        "INIT_MODE": config.init_mode,
        "INIT_HEADING": config.init_heading,
        "REFLECTION_CHOICE": config.reflection_choice,
    }
    return "".join(f"{key}={value!r}\n" if isinstance(value, float) else f"{key}={value}\n"
                   for key, value in values.items())


def load_config(path: Path | None) -> SimConfig:
    """Config from a file, or all defaults when no path is given"""
    if path is None:
        return SimConfig()
    return parse_config(Path(path).read_text())
