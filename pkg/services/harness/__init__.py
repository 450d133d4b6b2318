"""Experiment harness: configs, sweeps, analysis and artifact emission"""

from services.harness.analysis import AnalysisOptions, analyze, load_avoidance_flags, load_mask
from services.harness.config_io import load_config, parse_config, render_config
from services.harness.field_maps import equilibrium_distances, force_field_map
from services.harness.heatmap import emit_heatmap, write_heatmaps
from services.harness.replay import load_boxes, replay_boxes
from services.harness.scene import load_scene
from services.harness.sweep import (
    DEFAULT_ALPHA0,
    DEFAULT_BETA0,
    DEFAULT_FOV,
    aggregate,
    cell_config,
    run_cell,
    sweep,
    write_sweep,
)

__all__ = [
    "DEFAULT_ALPHA0",
    "DEFAULT_BETA0",
    "DEFAULT_FOV",
    "AnalysisOptions",
    "aggregate",
    "analyze",
    "cell_config",
    "emit_heatmap",
    "equilibrium_distances",
    "force_field_map",
    "load_avoidance_flags",
    "load_boxes",
    "load_config",
    "load_mask",
    "load_scene",
    "parse_config",
    "render_config",
    "replay_boxes",
    "run_cell",
    "sweep",
    "write_heatmaps",
    "write_sweep",
]
