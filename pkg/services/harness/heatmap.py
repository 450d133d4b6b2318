"""Standalone SVG heatmaps of sweep aggregates over the (alpha0, beta0) grid"""

import logging
import math
from pathlib import Path

import numpy as np
import pandas as pd
from jinja2 import Template
from matplotlib import colormaps
from matplotlib.colors import Normalize, to_hex

from shared.errors import EmptyGrid

logger = logging.getLogger(__name__)

CELL = 64
MARGIN_LEFT = 90
MARGIN_TOP = 56
MARGIN_BOTTOM = 56
COLORMAP = "viridis"

# metrics with a fixed scale; everything else spans its own range
FIXED_RANGES = {"P": (0.0, 1.0), "RCA": (0.0, 1.0)}

HEATMAP_TEMPLATE = Template("""<?xml version="1.0" encoding="UTF-8"?>
<svg xmlns="http://www.w3.org/2000/svg" width="{{ width }}" height="{{ height }}" \
viewBox="0 0 {{ width }} {{ height }}" font-family="sans-serif" font-size="12">
<defs>
<pattern id="hatch" width="8" height="8" patternUnits="userSpaceOnUse" \
 patternTransform="rotate(45)">
<rect width="8" height="8" fill="#ffffff"/>
<line x1="0" y1="0" x2="0" y2="8" stroke="#888888" stroke-width="3"/>
</pattern>
</defs>
<text x="{{ width / 2 }}" y="22" text-anchor="middle" font-size="14">{{ title }}</text>
{% for cell in cells %}
<rect class="cell{% if cell.missing %} missing{% endif %}" x="{{ cell.x }}" y="{{ cell.y }}" \
width="{{ size }}" height="{{ size }}" fill="{{ cell.fill }}" stroke="#ffffff"/>
<text x="{{ cell.x + size / 2 }}" y="{{ cell.y + size / 2 + 4 }}" text-anchor="middle" \
fill="{{ cell.ink }}">{{ cell.label }}</text>
{% endfor %}
{% for label in row_labels %}
<text class="row-label" x="{{ left - 8 }}" y="{{ label.y }}" \
text-anchor="end">{{ label.text }}</text>
{% endfor %}
{% for label in column_labels %}
<text class="col-label" x="{{ label.x }}" y="{{ top + rows * size + 18 }}" \
text-anchor="middle">{{ label.text }}</text>
{% endfor %}
<text x="{{ left + columns * size / 2 }}" y="{{ height - 10 }}" text-anchor="middle">beta0</text>
<text x="16" y="{{ top + rows * size / 2 }}" text-anchor="middle" \
transform="rotate(-90 16 {{ top + rows * size / 2 }})">alpha0</text>
</svg>
""", autoescape=True)


def _color_range(metric: str, values: np.ndarray) -> tuple[float, float]:
    if metric in FIXED_RANGES:
        return FIXED_RANGES[metric]
    finite = values[np.isfinite(values)]
    if finite.size == 0:
        return 0.0, 1.0
    return float(finite.min()), float(finite.max())


def emit_heatmap(table: pd.DataFrame, metric: str, fov: float | None = None) -> str:
    """
    One colored, value-annotated cell per (alpha0, beta0)

    alpha0 increases upwards, beta0 to the right. Cells without a value
    (failed or missing runs) are hatched. `fov` selects one FOV slice when
    the table holds several.
    """
    if metric not in table.columns:
        raise KeyError(f"no column {metric!r} in aggregate table")
    if fov is not None and "fov" in table.columns:
        table = table[np.isclose(table["fov"], fov)]
    elif "fov" in table.columns and table["fov"].nunique() > 1:
        raise ValueError("table holds several FOV values, choose one with fov=")
    if table.empty:
        raise EmptyGrid(f"no cells to draw for {metric}")

    grid = table.pivot_table(index="alpha0", columns="beta0", values=metric, aggfunc="mean",
                             dropna=False)
    alphas = sorted(table["alpha0"].unique(), reverse=True)
    betas = sorted(table["beta0"].unique())
    grid = grid.reindex(index=alphas, columns=betas)
    values = grid.to_numpy(dtype=np.float64)

    vmin, vmax = _color_range(metric, values)
    norm = Normalize(vmin=vmin, vmax=vmax, clip=True)
    cmap = colormaps[COLORMAP]

    cells = []
    for row, _alpha in enumerate(alphas):
        for column, _beta in enumerate(betas):
            value = values[row, column]
            missing = not math.isfinite(value)
            shade = 0.0 if missing else float(norm(value))
            cells.append({
                "x": MARGIN_LEFT + column * CELL,
                "y": MARGIN_TOP + row * CELL,
                "missing": missing,
                "fill": "url(#hatch)" if missing else to_hex(cmap(shade)),
                "ink": "#000000" if missing or shade > 0.5 else "#ffffff",
                "label": "n/a" if missing else f"{value:.2f}",
            })

    title = metric if fov is None else f"{metric} (FOV {fov:g} of 2pi)"
    svg = HEATMAP_TEMPLATE.render(
        title=title,
        cells=cells,
        size=CELL,
        left=MARGIN_LEFT,
        top=MARGIN_TOP,
        rows=len(alphas),
        columns=len(betas),
        width=MARGIN_LEFT + len(betas) * CELL + 20,
        height=MARGIN_TOP + len(alphas) * CELL + MARGIN_BOTTOM,
        row_labels=[
            {"y": MARGIN_TOP + i * CELL + CELL / 2 + 4, "text": f"{alpha:g}"}
            for i, alpha in enumerate(alphas)
        ],
        column_labels=[
            {"x": MARGIN_LEFT + j * CELL + CELL / 2, "text": f"{beta:g}"}
            for j, beta in enumerate(betas)
        ],
    )
    logger.debug(f"Rendered {metric} heatmap with {len(cells)} cells")
    return svg


def write_heatmaps(
    table: pd.DataFrame, out_dir: Path, metrics: list[str] | None = None
) -> list[Path]:
    """One SVG per metric and FOV slice"""
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    metrics = metrics or ["P", "D_mean", "RCA", "N_clus_max", "R_o_sim"]
    fovs = sorted(table["fov"].unique()) if "fov" in table.columns else [None]

    written = []
    for metric in metrics:
        for fov in fovs:
            suffix = "" if fov is None else f"_fov{round(fov * 100):03d}"
            path = out_dir / f"heatmap_{metric}{suffix}.svg"
            path.write_text(emit_heatmap(table, metric, fov))
            written.append(path)
    logger.info(f"Wrote {len(written)} heatmaps to {out_dir}")
    return written
