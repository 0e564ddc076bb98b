"""Deterministic exporters: matrix CSV, score report CSV, scatter SVG, DOT.

Equal inputs always produce byte-identical output. CSVs use RFC-4180
style quoting, UTF-8, and LF line endings; decimal separators are
periods. Zero matrix cells print as empty strings so the grid keeps the
sparse look of the source diagrams.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from typing import Sequence

from keyfactors.analysis import AnalysisConfig, FactorScore, Region, format_display
from keyfactors.matrix import RelationshipMatrix, SumsTable
from keyfactors.model import FactorCategory


@dataclass(frozen=True)
class PlotLayout:
    """Canvas geometry for the active-passive scatter plot."""

    width: int = 800
    height: int = 800
    margin: int = 60
    marker_size: float = 5.0
    font_size: int = 11

    def __post_init__(self) -> None:
        if self.width <= 0 or self.height <= 0:
            raise ValueError("canvas dimensions must be positive")
        if self.margin < 0 or 2 * self.margin >= min(self.width, self.height):
            raise ValueError("margins must be non-negative and leave a drawable area")

    def x_pixel(self, passive_norm: float) -> float:
        return self.margin + passive_norm / 100.0 * (self.width - 2 * self.margin)

    def y_pixel(self, active_norm: float) -> float:
        # y axis inverted: normalized origin sits at the bottom-left
        return self.height - self.margin - active_norm / 100.0 * (self.height - 2 * self.margin)


def export_matrix_csv(
    matrix: RelationshipMatrix,
    table: SumsTable,
    active_ranks: Sequence[int],
    passive_ranks: Sequence[int],
) -> str:
    """Matrix grid with trailing active sum/rank columns and passive rows."""
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    labels = [factor.label for factor in matrix.factors]
    writer.writerow([""] + labels + ["active_sum", "active_rank"])
    for i, factor in enumerate(matrix.factors):
        cells = ["" if value == 0 else value for value in matrix.counts[i]]
        writer.writerow([factor.label] + cells + [table.active[i], active_ranks[i]])
    if matrix.factors:
        writer.writerow(["passive_sum"] + list(table.passive) + ["", ""])
        writer.writerow(["passive_rank"] + list(passive_ranks) + ["", ""])
    return buffer.getvalue()


REPORT_COLUMNS = [
    "id",
    "category",
    "name",
    "active_sum",
    "active_norm",
    "active_rank",
    "passive_sum",
    "passive_norm",
    "passive_rank",
    "region",
    "key",
]


def export_report_csv(scores: Sequence[FactorScore], decimals: int = 1) -> str:
    """One row per factor in id order, norms printed at display precision."""
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(REPORT_COLUMNS)
    for score in sorted(scores, key=lambda s: s.factor.id):
        writer.writerow(
            [
                score.factor.id,
                score.factor.category.value,
                score.factor.display_name,
                score.active_sum,
                format_display(score.active_norm, decimals),
                score.active_rank,
                score.passive_sum,
                format_display(score.passive_norm, decimals),
                score.passive_rank,
                score.region.value,
                "true" if score.key else "false",
            ]
        )
    return buffer.getvalue()


_MARKER_STYLE = {
    Region.DOMINANT: ("triangle", "#d62728"),
    Region.DYNAMIC: ("circle", "#1f77b4"),
    Region.REACTIVE: ("square", "#2ca02c"),
    Region.ISOLATED: ("diamond", "#7f7f7f"),
}


def render_scatter_svg(
    scores: Sequence[FactorScore],
    cfg: AnalysisConfig | None = None,
    layout: PlotLayout | None = None,
) -> str:
    """Active-passive scatter: passive on x, active on y, both 0-100.

    Draws the two region boundary rays implied by the configured ratios,
    then one marker per factor (shape and fill keyed by region, labeled
    with the factor id) in ascending id order.
    """
    cfg = cfg or AnalysisConfig()
    layout = layout or PlotLayout()
    parts = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{layout.width}" '
        f'height="{layout.height}" viewBox="0 0 {layout.width} {layout.height}">',
        f'<rect x="{_fmt(layout.x_pixel(0))}" y="{_fmt(layout.y_pixel(100))}" '
        f'width="{_fmt(layout.x_pixel(100) - layout.x_pixel(0))}" '
        f'height="{_fmt(layout.y_pixel(0) - layout.y_pixel(100))}" '
        'fill="none" stroke="#333333" stroke-width="1"/>',
    ]

    tick_len = 5
    for value in range(0, 101, 10):
        x = layout.x_pixel(value)
        y = layout.y_pixel(value)
        x0, y0 = layout.x_pixel(0), layout.y_pixel(0)
        parts.append(
            f'<line class="tick" x1="{_fmt(x)}" y1="{_fmt(y0)}" '
            f'x2="{_fmt(x)}" y2="{_fmt(y0 + tick_len)}" stroke="#333333" stroke-width="1"/>'
        )
        parts.append(
            f'<text x="{_fmt(x)}" y="{_fmt(y0 + tick_len + layout.font_size + 2)}" '
            f'font-size="{layout.font_size}" text-anchor="middle">{value}</text>'
        )
        parts.append(
            f'<line class="tick" x1="{_fmt(x0 - tick_len)}" y1="{_fmt(y)}" '
            f'x2="{_fmt(x0)}" y2="{_fmt(y)}" stroke="#333333" stroke-width="1"/>'
        )
        parts.append(
            f'<text x="{_fmt(x0 - tick_len - 3)}" y="{_fmt(y + layout.font_size / 3)}" '
            f'font-size="{layout.font_size}" text-anchor="end">{value}</text>'
        )
    parts.append(
        f'<text x="{_fmt((layout.x_pixel(0) + layout.x_pixel(100)) / 2)}" '
        f'y="{_fmt(layout.height - 8)}" font-size="{layout.font_size + 2}" '
        'text-anchor="middle">passive sum (normalized)</text>'
    )
    mid_y = (layout.y_pixel(0) + layout.y_pixel(100)) / 2
    parts.append(
        f'<text x="{layout.font_size + 2}" y="{_fmt(mid_y)}" '
        f'font-size="{layout.font_size + 2}" text-anchor="middle" '
        f'transform="rotate(-90 {layout.font_size + 2} {_fmt(mid_y)})">active sum (normalized)</text>'
    )

    for slope in (cfg.dominant_ratio, cfg.reactive_ratio):
        px, py = _ray_end(slope)
        parts.append(
            f'<line class="boundary" x1="{_fmt(layout.x_pixel(0))}" y1="{_fmt(layout.y_pixel(0))}" '
            f'x2="{_fmt(layout.x_pixel(px))}" y2="{_fmt(layout.y_pixel(py))}" '
            'stroke="#999999" stroke-width="1" stroke-dasharray="6,4"/>'
        )

    for score in sorted(scores, key=lambda s: s.factor.id):
        x = layout.x_pixel(score.passive_norm)
        y = layout.y_pixel(score.active_norm)
        shape, fill = _MARKER_STYLE[score.region]
        parts.append(f'<g class="marker" data-factor="{score.factor.id}">')
        parts.append(_marker_element(shape, fill, x, y, layout.marker_size))
        parts.append(
            f'<text x="{_fmt(x + layout.marker_size + 2)}" y="{_fmt(y - layout.marker_size - 2)}" '
            f'font-size="{layout.font_size}">{score.factor.id}</text>'
        )
        parts.append("</g>")

    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def _ray_end(slope: float) -> tuple[float, float]:
    # Intersection of active = slope * passive with the border of [0,100]^2.
    if slope >= 1.0:
        return 100.0 / slope, 100.0
    return 100.0, 100.0 * slope


def _marker_element(shape: str, fill: str, x: float, y: float, size: float) -> str:
    if shape == "circle":
        return f'<circle cx="{_fmt(x)}" cy="{_fmt(y)}" r="{_fmt(size)}" fill="{fill}"/>'
    if shape == "square":
        return (
            f'<rect x="{_fmt(x - size)}" y="{_fmt(y - size)}" '
            f'width="{_fmt(2 * size)}" height="{_fmt(2 * size)}" fill="{fill}"/>'
        )
    if shape == "triangle":
        points = f"{_fmt(x)},{_fmt(y - size)} {_fmt(x - size)},{_fmt(y + size)} {_fmt(x + size)},{_fmt(y + size)}"
    else:  # diamond
        points = f"{_fmt(x)},{_fmt(y - size)} {_fmt(x + size)},{_fmt(y)} {_fmt(x)},{_fmt(y + size)} {_fmt(x - size)},{_fmt(y)}"
    return f'<polygon points="{points}" fill="{fill}"/>'


def _fmt(value: float) -> str:
    return f"{value:.2f}"


_DOT_SHAPES = {
    FactorCategory.COMPONENT: "box",
    FactorCategory.FUNCTION: "ellipse",
    FactorCategory.CONTROL_FACTOR: "hexagon",
    FactorCategory.NOISE_FACTOR: "diamond",
    FactorCategory.ACTION: "trapezium",
    FactorCategory.EFFECT: "parallelogram",
    FactorCategory.HARM: "doubleoctagon",
}


def export_dot(matrix: RelationshipMatrix) -> str:
    """Directed graph of the merged failure network in DOT syntax.

    One node per factor (shape keyed by category), one edge per nonzero
    cell with the count as label and a proportional pen width; nodes and
    edges are emitted in id order.
    """
    lines = ["digraph failure_network {"]
    for factor in matrix.factors:
        label = _dot_escape(f"{factor.id}: {factor.display_name}")
        lines.append(f'  f{factor.id} [label="{label}", shape={_DOT_SHAPES[factor.category]}];')
    for r, row in enumerate(matrix.counts):
        for c, value in enumerate(row):
            if value:
                lines.append(
                    f'  f{r + 1} -> f{c + 1} [label="{value}", penwidth={float(value):.1f}];'
                )
    lines.append("}")
    return "\n".join(lines) + "\n"


def _dot_escape(text: str) -> str:
    return text.replace("\\", "\\\\").replace('"', '\\"').replace("\n", "\\n").replace("\r", "\\r")
