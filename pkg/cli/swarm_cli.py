#!/usr/bin/env python3
"""vswarm CLI - simulate, sweep and analyze vision-based collective motion"""

import functools
import json
import logging
import math
import sys
from pathlib import Path

import click
import pandas as pd
from pydantic import ValidationError

from services.engine import run as run_simulation
from services.engine import write_trajectory
from services.harness import (
    DEFAULT_ALPHA0,
    DEFAULT_BETA0,
    DEFAULT_FOV,
    AnalysisOptions,
    analyze,
    emit_heatmap,
    equilibrium_distances,
    force_field_map,
    load_boxes,
    load_config,
    load_scene,
    replay_boxes,
    sweep,
    write_heatmaps,
    write_sweep,
)
from services.perception import build_vpf
from shared.config import HarnessSettings, get_settings
from shared.errors import FormatError, SwarmError
from shared.models import SimConfig, SweepSpec

logger = logging.getLogger("vswarm")

TRAJECTORY_SUFFIX = {"csv": ".csv", "binary": ".msgpack"}


def handle_errors(func):
    """Turn package errors into a one-line diagnostic and exit code 1"""
    @functools.wraps(func)
    def wrapper(*args, **kwargs):
        try:
            return func(*args, **kwargs)
        except (SwarmError, ValidationError) as e:
            logger.debug(f"{func.__name__} failed", exc_info=True)
            raise click.ClickException(str(e)) from e
    return wrapper


def _float_list(ctx, param, value: str | None) -> list[float] | None:
    if value is None:
        return None
    try:
        values = [float(item) for item in value.split(",") if item.strip()]
    except ValueError:
        raise click.BadParameter(f"expected comma separated numbers, got {value!r}")
    if not values:
        raise click.BadParameter("expected at least one value")
    return values


def _config(path: Path | None, seed: int | None) -> SimConfig:
    config = load_config(path)
    if seed is not None:
        config = config.model_copy(update={"seed": seed})
    return config


config_option = click.option(
    "--config", "config_path", type=click.Path(exists=True, dir_okay=False, path_type=Path),
    help="KEY=value run configuration file",
)
seed_option = click.option(
    "--seed", type=click.IntRange(0, 2**64 - 1), help="Master seed (overrides SEED)"
)
out_option = click.option(
    "--out", "out_dir", type=click.Path(file_okay=False, path_type=Path),
    help="Output directory (default: VSWARM_OUT_DIR)",
)
window_option = click.option(
    "--window", type=click.FloatRange(0, 1, min_open=True), help="Trailing analysis window"
)


@click.group()
@click.option("--log-level", help="Logging level (default: VSWARM_LOG_LEVEL or INFO)")
@click.pass_context
def cli(ctx, log_level):
    """Vision-based collective motion simulator and sweep harness"""
    settings = get_settings()
    logging.basicConfig(
        level=(log_level or settings.log_level).upper(),
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )
    ctx.obj = settings


@cli.command()
@config_option
@seed_option
@out_option
@window_option
@click.option("--format", "fmt", type=click.Choice(["csv", "binary"]), help="Trajectory format")
@click.pass_obj
@handle_errors
def run(settings: HarnessSettings, config_path, seed, out_dir, window, fmt):
    """Single simulation -> trajectory, metrics CSV and summary JSON"""
    config = _config(config_path, seed)
    out_dir = out_dir or settings.out_dir
    out_dir.mkdir(parents=True, exist_ok=True)

    trajectory = run_simulation(config)
    suffix = TRAJECTORY_SUFFIX[fmt or settings.trajectory_format]
    trajectory_path = out_dir / f"trajectory_seed{config.seed}{suffix}"
    write_trajectory(trajectory, trajectory_path)

    options = AnalysisOptions(radius=config.params.radius, window=window or settings.window)
    metrics_path, summary_path = analyze(trajectory_path, config.arena, options, out_dir)

    summary = json.loads(summary_path.read_text())
    click.echo(f"Trajectory: {trajectory_path}")
    click.echo(f"Metrics:    {metrics_path}")
    click.echo(f"Summary:    {summary_path}")
    click.echo(f"P = {summary['P_mean']:.3f}, N_clus_max = {summary['N_clus_max_mean']:.2f}")


@cli.command("sweep")
@config_option
@seed_option
@out_option
@window_option
@click.option("--alpha0", callback=_float_list, help="Comma separated alpha0 values")
@click.option("--beta0", callback=_float_list, help="Comma separated beta0 values")
@click.option("--fov", callback=_float_list, help="Comma separated FOV fractions of 2pi")
@click.option("--reps", type=click.IntRange(min=1), default=20, show_default=True)
@click.option("--workers", type=click.IntRange(min=1),
              help="Parallel runs (default: VSWARM_WORKERS)")
@click.pass_obj
@handle_errors
def sweep_command(settings: HarnessSettings, config_path, seed, out_dir, window,
                  alpha0, beta0, fov, reps, workers):
    """(alpha0, beta0, FOV) grid -> detail/aggregate CSVs and SVG heatmaps"""
    spec = SweepSpec(
        alpha0_values=DEFAULT_ALPHA0 if alpha0 is None else alpha0,
        beta0_values=DEFAULT_BETA0 if beta0 is None else beta0,
        fov_fractions=DEFAULT_FOV if fov is None else fov,
        repetitions=reps,
        base=_config(config_path, seed),
        window=window or settings.window,
    )
    out_dir = out_dir or settings.out_dir
    detail, table = sweep(spec, workers=workers or settings.workers)
    detail_path, aggregate_path = write_sweep(detail, table, out_dir)
    heatmaps = write_heatmaps(table, out_dir)

    click.echo(f"{spec.n_runs} runs, {int(detail['failed'].sum())} failed")
    click.echo(f"Detail:    {detail_path}")
    click.echo(f"Aggregate: {aggregate_path}")
    click.echo(f"Heatmaps:  {len(heatmaps)} SVG files in {out_dir}")


@cli.command("analyze")
@click.argument("trajectory", type=click.Path(exists=True, dir_okay=False, path_type=Path))
@config_option
@out_option
@window_option
@click.option("--mask", type=click.Path(exists=True, dir_okay=False, path_type=Path),
              help="File of timesteps to exclude from aggregates")
@click.option("--clustering", type=click.Choice(["sim", "robot"]), default="sim",
              show_default=True,
              help="Fragmentation measure: simulation or robot-data dissimilarity")
@click.option("--avoidance", type=click.Path(exists=True, dir_okay=False, path_type=Path),
              help="CSV of t, agent_id, avoiding flags; adds R_o_exp to the summary")
@click.pass_obj
@handle_errors
def analyze_command(settings: HarnessSettings, trajectory, config_path, out_dir, window, mask,
                    clustering, avoidance):
    """Trajectory file -> per-step metrics CSV and window summary JSON"""
    config = load_config(config_path)
    options = AnalysisOptions(
        radius=config.params.radius,
        window=window or settings.window,
        clustering=clustering,
        mask_path=mask,
        avoidance_path=avoidance,
    )
    metrics_path, summary_path = analyze(
        trajectory, config.arena, options, out_dir or settings.out_dir
    )
    click.echo(f"Metrics: {metrics_path}")
    click.echo(f"Summary: {summary_path}")


@cli.command()
@click.argument("scene", type=click.Path(exists=True, dir_okay=False, path_type=Path))
@config_option
@click.option("--agent", type=click.IntRange(min=0), default=0, show_default=True)
@click.option("--output", type=click.Path(dir_okay=False, path_type=Path),
              help="Write the dump here instead of stdout")
@handle_errors
def vpf(scene, config_path, agent, output):
    """Dump one agent's visual field for a scene CSV (x, y, psi)"""
    config = load_config(config_path)
    states = load_scene(scene, v0=config.params.v0)
    if agent >= len(states):
        raise FormatError(f"scene has {len(states)} agents, no agent {agent}")
    dump = build_vpf(agent, states, config.arena, config.params).to_text()
    if output:
        output.write_text(dump)
    else:
        click.echo(dump, nl=False)


@cli.command()
@click.argument("aggregate_csv", type=click.Path(exists=True, dir_okay=False, path_type=Path))
@out_option
@click.option("--metric", "metrics", multiple=True, help="Metric column(s) to draw")
@click.option("--fov", type=float, help="Single FOV slice to draw")
@click.pass_obj
@handle_errors
def plot(settings: HarnessSettings, aggregate_csv, out_dir, metrics, fov):
    """Aggregate CSV -> SVG heatmaps"""
    table = pd.read_csv(aggregate_csv)
    out_dir = out_dir or settings.out_dir
    if fov is None:
        written = write_heatmaps(table, out_dir, list(metrics) or None)
    else:
        out_dir.mkdir(parents=True, exist_ok=True)
        written = []
        for metric in metrics or ["P"]:
            path = out_dir / f"heatmap_{metric}_fov{round(fov * 100):03d}.svg"
            path.write_text(emit_heatmap(table, metric, fov))
            written.append(path)
    for path in written:
        click.echo(f"  {path}")


@cli.command()
@config_option
@click.option("--d-min", type=click.FloatRange(min=0, min_open=True),
              help="Lower end of the distance search (default: one body length)")
@handle_errors
def equilibrium(config_path, d_min):
    """Front-back and left-right equilibrium distances of a parameter set"""
    params = load_config(config_path).params
    for axis, distance in equilibrium_distances(params, d_min=d_min).items():
        shown = "no sign change" if distance is None else f"{distance:.3f} px"
        click.echo(f"{axis:>11}: {shown}")


@cli.command()
@config_option
@click.option("--extent", type=click.FloatRange(min=0, min_open=True), default=100.0,
              show_default=True)
@click.option("--resolution", type=click.IntRange(min=2), default=41, show_default=True)
@click.option("--output", type=click.Path(dir_okay=False, path_type=Path), required=True)
@handle_errors
def forcemap(config_path, extent, resolution, output):
    """Social force grid (x, y, dv, dpsi) around one focal agent"""
    params = load_config(config_path).params
    force_field_map(params, extent, resolution).to_csv(output, index=False)
    click.echo(f"Force map: {output}")


@cli.command()
@click.argument("boxes", type=click.Path(exists=True, dir_okay=False, path_type=Path))
@config_option
@click.option("--camera-fov", type=click.FloatRange(0, 360, min_open=True), default=175.0,
              show_default=True, help="Horizontal camera field of view, degrees")
@click.option("--output", type=click.Path(dir_okay=False, path_type=Path), required=True)
@handle_errors
def replay(boxes, config_path, camera_fov, output):
    """Detection box CSV -> per-frame social forces"""
    params = load_config(config_path).params
    replay_boxes(load_boxes(boxes), math.radians(camera_fov), params).to_csv(output, index=False)
    click.echo(f"Replay: {output}")


if __name__ == "__main__":
    cli()
