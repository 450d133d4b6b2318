import importlib
import json
import math
import re

import numpy as np
import pandas as pd
import pytest

from services.engine import write_trajectory
from services.harness import (
    AnalysisOptions,
    aggregate,
    analyze,
    cell_config,
    emit_heatmap,
    equilibrium_distances,
    force_field_map,
    load_avoidance_flags,
    load_boxes,
    load_config,
    load_mask,
    load_scene,
    parse_config,
    render_config,
    replay_boxes,
    sweep,
    write_heatmaps,
    write_sweep,
)
from shared.errors import EmptyGrid, FormatError, MalformedBox, ParseError, RangeError
from shared.models import Arena, SimConfig, SweepSpec
from tests.builders import frozen_snapshot, parallel_pair, two_subgroups

# config files

def test_reference_table_parses_to_defaults(config_text):
    assert parse_config(config_text) == SimConfig()


def test_fov_fraction_becomes_half_angle(config_text):
    config = parse_config(config_text.replace("AGENT_FOV=1.0", "AGENT_FOV=0.5"))
    assert config.params.fov_half == pytest.approx(math.pi / 2)


def test_walls_select_reflective_boundary(config_text):
    config = parse_config(config_text.replace("BOUNDARY=torus", "BOUNDARY=walls"))
    assert config.arena.boundary == "reflective"


def test_comments_and_blank_lines_are_ignored():
    config = parse_config("# header\n\nN=12  # twelve agents\n   \nSEED=4\n")
    assert config.n_agents == 12
    assert config.seed == 4


@pytest.mark.parametrize("text, line_no", [
    ("N=10\nFOO=1\n", 2),
    ("N=10\n\nN=12\n", 3),
    ("N 10\n", 1),
    ("SEED=1\nN=ten\n", 2),
    ("N=\n", 1),
])
def test_parse_errors_name_the_line(text, line_no):
    with pytest.raises(ParseError) as excinfo:
        parse_config(text)
    assert excinfo.value.line_no == line_no
    assert str(excinfo.value).startswith(f"line {line_no}:")


@pytest.mark.parametrize("text, key", [
    ("VF_GAM=-1\n", "VF_GAM"),
    ("N=0\n", "N"),
    ("VISUAL_FIELD_RESOLUTION=321\n", "VISUAL_FIELD_RESOLUTION"),
    ("AGENT_FOV=1.5\n", "AGENT_FOV"),
    ("BOUNDARY=box\n", "BOUNDARY"),
    ("ENV_WIDTH=0\n", "ENV_WIDTH"),
])
def test_out_of_range_values_name_the_key(text, key):
    with pytest.raises(RangeError, match=key):
        parse_config(text)


@pytest.mark.parametrize("fov", [1.0, 0.5, 0.25])
def test_rendered_config_parses_back(fov):
    config = SimConfig(
        n_agents=7,
        t_max=500,
        seed=99,
        reflection_choice="random",
        arena=Arena(width=640.0, height=480.0, boundary="reflective"),
    )
    config = cell_config(config, alpha0=0.3, beta0=1.7, fov=fov)
    assert parse_config(render_config(config)) == config


def test_missing_config_path_means_defaults(tmp_path, config_text):
    assert load_config(None) == SimConfig()
    path = tmp_path / "run.cfg"
    path.write_text(config_text.replace("N=10", "N=3"))
    assert load_config(path).n_agents == 3


# sweeps

@pytest.fixture
def tiny_spec() -> SweepSpec:
    base = SimConfig(n_agents=3, t_max=40, record_stride=10, seed=3)
    return SweepSpec(
        alpha0_values=[1.0], beta0_values=[0.5], fov_fractions=[1.0], repetitions=2, base=base
    )


def test_sweep_tables(tiny_spec):
    detail, table = sweep(tiny_spec)
    assert len(detail) == 2
    assert list(detail["rep"]) == [0, 1]
    assert not detail["failed"].any()
    assert len(table) == 1
    assert table.loc[0, "n_failed"] == 0
    assert 0 <= table.loc[0, "P"] <= 1


def test_sweep_is_reproducible(tiny_spec):
    first, _ = sweep(tiny_spec)
    second, _ = sweep(tiny_spec)
    assert first.to_csv(index=False) == second.to_csv(index=False)


def test_failed_runs_are_flagged_not_fatal(tiny_spec, monkeypatch):
    def explode(config, run_index=0, initial=None):
        raise RuntimeError("integrator blew up")

    monkeypatch.setattr(importlib.import_module("services.harness.sweep"), "run", explode)
    detail, table = sweep(tiny_spec)
    assert detail["failed"].all()
    assert detail["P"].isna().all()
    assert table.loc[0, "n_failed"] == 2
    assert np.isnan(table.loc[0, "P"])


def test_aggregate_counts_fully_cohesive_repetitions():
    detail = pd.DataFrame({
        "alpha0": [1.0, 1.0, 2.0, 2.0],
        "beta0": [0.5, 0.5, 0.5, 0.5],
        "fov": [1.0, 1.0, 1.0, 1.0],
        "rep": [0, 1, 0, 1],
        "seed": [0, 0, 0, 0],
        "P": [0.9, 0.7, 0.95, np.nan],
        "D_mean": [20.0, 30.0, 25.0, np.nan],
        "RCA": [0.5, 0.6, 0.7, np.nan],
        "N_clus_max": [10.0, 8.0, 10.0, np.nan],
        "R_o_sim": [0.0, 1.0, 0.5, np.nan],
        "failed": [False, False, False, True],
    })
    table = aggregate(detail, n_agents=10)
    assert list(table["alpha0"]) == [1.0, 2.0]
    assert list(table["full_cohesion_frac"]) == [0.5, 1.0]
    assert list(table["n_failed"]) == [0, 1]
    assert table.loc[0, "P"] == pytest.approx(0.8)
    assert table.loc[1, "P"] == pytest.approx(0.95)


def test_sweep_files(tiny_spec, tmp_path):
    detail, table = sweep(tiny_spec)
    detail_path, aggregate_path = write_sweep(detail, table, tmp_path)
    assert detail_path.name == "sweep_detail.csv"
    assert len(pd.read_csv(aggregate_path)) == 1


# heatmaps

def grid_table(metric: str, values: list[float], fov: float = 1.0) -> pd.DataFrame:
    return pd.DataFrame({
        "alpha0": [0.5, 0.5, 1.0, 1.0],
        "beta0": [1.0, 2.0, 1.0, 2.0],
        "fov": [fov] * 4,
        metric: values,
    })


def test_heatmap_draws_one_labelled_cell_per_grid_point():
    svg = emit_heatmap(grid_table("P", [0.0, 0.25, 0.5, 1.0]), "P")
    assert svg.count('<rect class="cell') == 4
    for label in ("0.00", "0.25", "0.50", "1.00"):
        assert f">{label}</text>" in svg
    assert "#440154" in svg and "#fde725" in svg


def test_alpha0_increases_upwards():
    svg = emit_heatmap(grid_table("P", [0.1, 0.2, 0.3, 0.4]), "P")
    rows = re.findall(r'class="row-label"[^>]*>([^<]+)<', svg)
    assert rows == ["1", "0.5"]
    columns = re.findall(r'class="col-label"[^>]*>([^<]+)<', svg)
    assert columns == ["1", "2"]


def test_constant_metric_uses_one_color():
    svg = emit_heatmap(grid_table("D_mean", [12.0] * 4), "D_mean")
    fills = set(re.findall(r'<rect class="cell"[^>]*fill="([^"]+)"', svg))
    assert len(fills) == 1


def test_missing_cells_are_hatched():
    svg = emit_heatmap(grid_table("RCA", [0.4, np.nan, 0.6, 0.7]), "RCA")
    assert svg.count('class="cell missing"') == 1
    assert "url(#hatch)" in svg
    assert ">n/a</text>" in svg


def test_heatmap_needs_one_fov_slice():
    table = pd.concat([grid_table("P", [0.1] * 4, fov=0.5), grid_table("P", [0.2] * 4)])
    with pytest.raises(ValueError):
        emit_heatmap(table, "P")
    assert emit_heatmap(table, "P", fov=0.5).count('<rect class="cell') == 4
    with pytest.raises(EmptyGrid):
        emit_heatmap(table, "P", fov=0.3)


def test_unknown_metric_is_rejected():
    with pytest.raises(KeyError):
        emit_heatmap(grid_table("P", [0.1] * 4), "polarity")


def test_heatmap_files_per_fov(tmp_path):
    table = pd.concat([grid_table("P", [0.1] * 4, fov=0.5), grid_table("P", [0.2] * 4)])
    paths = write_heatmaps(table, tmp_path, metrics=["P"])
    assert sorted(path.name for path in paths) == ["heatmap_P_fov050.svg", "heatmap_P_fov100.svg"]
    assert all(path.read_text().startswith("<?xml") for path in paths)


# force landscapes

def test_equilibrium_needs_a_search_below_contact(params):
    assert equilibrium_distances(params) == {"front-back": None, "left-right": None}
    distances = equilibrium_distances(params, d_min=1.01 * params.radius)
    for distance in distances.values():
        assert params.radius < distance < 2 * params.radius
        assert distance == pytest.approx(5.6192, abs=1e-3)


def test_force_map_grid(params):
    frame = force_field_map(params, extent=100.0, resolution=41)
    assert list(frame.columns) == ["x", "y", "dv", "dpsi"]
    assert len(frame) == 41 * 41
    origin = frame[(frame["x"] == 0) & (frame["y"] == 0)]
    assert origin[["dv", "dpsi"]].isna().all(axis=None)


def test_force_map_is_mirror_symmetric(params):
    frame = force_field_map(params, extent=60.0, resolution=25)
    dv = frame["dv"].to_numpy().reshape(25, 25)
    dpsi = frame["dpsi"].to_numpy().reshape(25, 25)
    np.testing.assert_allclose(dv, dv[::-1], atol=1e-9, equal_nan=True)
    np.testing.assert_allclose(dpsi, -dpsi[::-1], atol=1e-9, equal_nan=True)


def test_force_map_rejects_empty_grid(params):
    with pytest.raises(ValueError):
        force_field_map(params, extent=0.0)


# detection replay

def boxes_table(rows: list[tuple]) -> pd.DataFrame:
    return pd.DataFrame(rows, columns=["frame", "x_min", "x_max", "height", "frame_width"])


def test_replay_reports_each_frame(params):
    table = boxes_table([
        (0, 280.0, 360.0, 60.0, 640.0),
        (1, 100.0, 150.0, 50.0, 640.0),
        (1, 500.0, 540.0, 40.0, 640.0),
    ])
    result = replay_boxes(table, camera_fov=math.pi, params=params)
    assert list(result["frame"]) == [0, 1]
    assert list(result["n_boxes"]) == [1, 2]
    assert result.loc[0, "visible_pixels"] == 20
    assert result.loc[0, "dpsi"] == pytest.approx(0.0, abs=1e-12)


@pytest.mark.parametrize("row", [
    (0, 50.0, 40.0, 30.0, 640.0),
    (0, 10.0, 40.0, 0.0, 640.0),
])
def test_replay_rejects_malformed_boxes(row):
    with pytest.raises(MalformedBox):
        replay_boxes(boxes_table([row]))


def test_box_file_needs_every_column(tmp_path):
    path = tmp_path / "boxes.csv"
    path.write_text("frame,x_min,x_max\n0,1,2\n")
    with pytest.raises(FormatError, match="missing columns"):
        load_boxes(path)


# scenes

def test_scene_without_speeds_uses_preferred_speed(tmp_path):
    path = tmp_path / "scene.csv"
    path.write_text("x,y,psi\n100,100,0\n200,100,3.14\n")
    scene = load_scene(path, v0=1.5)
    assert len(scene) == 2
    assert {state.v for state in scene} == {1.5}


def test_scene_needs_headings(tmp_path):
    path = tmp_path / "scene.csv"
    path.write_text("x,y\n100,100\n")
    with pytest.raises(FormatError):
        load_scene(path)


# trajectory analysis

def test_mask_file(tmp_path):
    path = tmp_path / "mask.txt"
    path.write_text("# tracking lost\n160\n\n180  # occlusion\n")
    assert load_mask(path) == {160, 180}


def test_mask_with_garbage_is_rejected(tmp_path):
    path = tmp_path / "mask.txt"
    path.write_text("12\nabc\n")
    with pytest.raises(FormatError, match="line 2"):
        load_mask(path)
    with pytest.raises(FormatError):
        load_mask(tmp_path / "absent.txt")


def analyzed(trajectory, tmp_path, arena=None, **options) -> dict:
    path = write_trajectory(trajectory, tmp_path / "trajectory.csv")
    metrics_path, summary_path = analyze(
        path, arena or Arena(), AnalysisOptions(**options), tmp_path / "out"
    )
    assert metrics_path.name == "trajectory_metrics.csv"
    assert len(pd.read_csv(metrics_path)) == trajectory.n_records
    return json.loads(summary_path.read_text())


def test_parallel_pair_summary(tmp_path):
    summary = analyzed(parallel_pair(), tmp_path)
    assert summary["n_agents"] == 2
    assert summary["n_masked"] == 0
    assert summary["n_steps"] == 3
    assert summary["D_mean_mean"] == pytest.approx(100.0)
    assert summary["P_mean"] == pytest.approx(1.0)
    assert summary["RCA_mean"] is None


def test_lone_agent_summary(tmp_path):
    trajectory = frozen_snapshot(np.array([[450.0, 450.0]]), np.array([0.0]))
    summary = analyzed(trajectory, tmp_path)
    assert summary["D_mean_mean"] is None
    assert summary["N_clus_max_mean"] == 1
    assert summary["R_o_sim"] == 0.0


def test_mask_shrinks_the_window(tmp_path):
    mask = tmp_path / "mask.txt"
    mask.write_text("160\n180\n")
    summary = analyzed(parallel_pair(), tmp_path, mask_path=mask)
    assert summary["n_steps"] == 1
    assert summary["n_masked"] == 2
    assert summary["t_start"] == 140


def test_split_group_summary(tmp_path):
    positions, headings = two_subgroups()
    summary = analyzed(frozen_snapshot(positions, headings), tmp_path, window=1.0)
    assert summary["N_clus_max_mean"] == 5
    assert summary["P_mean"] == pytest.approx(0.0, abs=1e-12)


def test_robot_clustering_scales_by_the_trajectory_extent(tmp_path):
    # extent hypot(180, 100): the pair at 100 px is too far apart to count as one group
    sim = analyzed(parallel_pair(), tmp_path)
    robot = analyzed(parallel_pair(), tmp_path, clustering="robot")
    assert sim["N_clus_max_mean"] == 2
    assert robot["N_clus_max_mean"] == 1
    assert robot["clustering"] == "robot"
    assert "R_o_exp" not in robot


def avoidance_csv(path, n_steps: int, n_agents: int, flagged: set[tuple[int, int]]):
    rows = [
        f"{t},{agent_id},{int((t, agent_id) in flagged)}"
        for t in range(n_steps)
        for agent_id in range(n_agents)
    ]
    path.write_text("t,agent_id,avoiding\n" + "\n".join(rows) + "\n")
    return path


def test_avoidance_flags_are_reported(tmp_path):
    flags = avoidance_csv(
        tmp_path / "avoid.csv", 10, 2, {(0, 0), (1, 0), (2, 1), (3, 1), (4, 1)}
    )
    assert load_avoidance_flags(flags).shape == (10, 2)
    summary = analyzed(parallel_pair(), tmp_path, avoidance_path=flags)
    assert summary["R_o_exp"] == pytest.approx(25.0)


def test_avoidance_flags_must_match_the_group(tmp_path):
    flags = avoidance_csv(tmp_path / "avoid.csv", 4, 3, set())
    with pytest.raises(FormatError, match="3 agents"):
        analyzed(parallel_pair(), tmp_path, avoidance_path=flags)


@pytest.mark.parametrize("text", [
    "t,agent_id\n0,0\n",
    "t,agent_id,avoiding\n0,0,1\n0,1,0\n1,0,0\n",
    "t,agent_id,avoiding\n0,0,2\n",
    "t,agent_id,avoiding\n0,0,1\n0,0,0\n",
])
def test_malformed_avoidance_files_are_rejected(tmp_path, text):
    path = tmp_path / "avoid.csv"
    path.write_text(text)
    with pytest.raises(FormatError):
        load_avoidance_flags(path)
