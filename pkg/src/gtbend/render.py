"""Deterministic SVG figures of developed fans.

Coordinates are printed with six decimals and elements are emitted in cell
order, so identical inputs give identical bytes.
"""

from __future__ import annotations

import colorsys
import math
from dataclasses import dataclass

import numpy as np

from .gtmodel import TruncatedTessellation


@dataclass(frozen=True)
class FigureOptions:
    chart: tuple[float, float] | None = None  # Klein point moved to the origin of the chart
    color_by_depth: bool = False
    clip_factor: float = 1.2
    size: int = 640
    arc_samples: int = 48

    def __post_init__(self) -> None:
        if not self.clip_factor > 0:
            raise ValueError("clip_factor must be positive")
        if self.size < 16:
            raise ValueError("size must be at least 16 pixels")
        if self.chart is not None and math.hypot(*self.chart) >= 1:
            raise ValueError("chart centre must lie inside the unit disk")


def klein_boost(center: tuple[float, float]) -> np.ndarray:
    """Projective map of the Klein disk taking ``center`` to the origin."""
    c = np.asarray(center, float)
    r2 = c @ c
    if r2 == 0:
        return np.eye(3)
    g = 1.0 / math.sqrt(1.0 - r2)
    B = np.eye(3)
    B[:2, :2] += (g - 1.0) * np.outer(c, c) / r2
    B[:2, 2] = -g * c
    B[2, :2] = -g * c
    B[2, 2] = g
    return B


def _apply_chart(B: np.ndarray, X: np.ndarray) -> np.ndarray:
    H = np.hstack([X, np.ones((len(X), 1))]) @ B.T
    if np.any(H[:, 2] <= 1e-12):
        raise ValueError("chart change sends part of the figure to infinity")
    return H[:, :2] / H[:, 2:]


def cell_outlines(tess: TruncatedTessellation, arc_samples: int = 48) -> list[np.ndarray]:
    m = tess.m
    phis = np.linspace(0.0, math.pi / m, arc_samples + 1)
    arc = np.column_stack([np.cos(phis), np.sin(phis)])
    return [np.vstack([[0.0, 0.0], arc @ c.transverse_linear().T]) for c in tess.cells]


def _color(i: int, n: int, depth: int, max_depth: int, by_depth: bool) -> str:
    if by_depth:
        h = 0.6 * depth / max(max_depth, 1)
    else:
        h = (i % max(n, 1)) / max(n, 1)
    r, g, b = colorsys.hls_to_rgb(h, 0.78, 0.55)
    return f"#{round(255 * r):02x}{round(255 * g):02x}{round(255 * b):02x}"


def render_svg(tess: TruncatedTessellation, options: FigureOptions | None = None) -> str:
    opt = options or FigureOptions()
    B = klein_boost(opt.chart) if opt.chart is not None else np.eye(3)
    polys = [_apply_chart(B, P) for P in cell_outlines(tess, opt.arc_samples)]
    center = polys[0].mean(axis=0)
    radius = max(float(np.max(np.linalg.norm(P - center, axis=1))) for P in polys)
    clip = opt.clip_factor * radius
    scale = opt.size / (2 * clip)

    def xy(p: np.ndarray) -> tuple[str, str]:
        x = (p[0] - center[0]) * scale + opt.size / 2
        y = opt.size / 2 - (p[1] - center[1]) * scale
        return f"{x:.6f}", f"{y:.6f}"

    def pts(P: np.ndarray) -> str:
        return " ".join(",".join(xy(p)) for p in P)

    N = tess.model.sectors
    max_depth = max(c.depth for c in tess.cells)
    half = opt.size / 2
    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{opt.size}" height="{opt.size}" '
        f'viewBox="0 0 {opt.size} {opt.size}">',
        f'<title>{tess.model.kind} fan m={tess.m} depth={tess.depth} cells={len(tess.cells)}</title>',
        f'<defs><clipPath id="chart"><circle cx="{half:.6f}" cy="{half:.6f}" r="{half:.6f}"/></clipPath></defs>',
        '<g clip-path="url(#chart)">',
    ]
    for c, P in zip(tess.cells, polys):
        fill = _color(c.label, N, c.depth, max_depth, opt.color_by_depth)
        cls = "cell base" if c.id == 0 else "cell"
        stroke = ' stroke="#000000" stroke-width="2.5"' if c.id == 0 else ""
        out.append(f'<polygon class="{cls}" data-cell="{c.id}" data-label="{c.label}" fill="{fill}"{stroke} '
                   f'points="{pts(P)}"/>')
    # walls: developed facet rays, bending walls emphasised
    seen: set[tuple[int, int]] = set()
    for a in tess.adjacency:
        if (a.lower, a.upper) in seen:
            continue
        seen.add((a.lower, a.upper))
        P = polys[a.lower]
        ray = np.vstack([P[0], P[-1]])
        bent = tess.model.weight(tess.cells[a.lower].position + 1) != 0.0
        width = "2.0" if bent else "0.8"
        color = "#b00020" if bent else "#333333"
        (x0, y0), (x1, y1) = xy(ray[0]), xy(ray[1])
        out.append(f'<line class="wall{" bent" if bent else ""}" x1="{x0}" y1="{y0}" x2="{x1}" y2="{y1}" '
                   f'stroke="{color}" stroke-width="{width}"/>')
    out.append("</g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"


__all__ = ["FigureOptions", "cell_outlines", "klein_boost", "render_svg"]
