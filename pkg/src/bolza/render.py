"""SVG pictures of the tessellation by translates of the fundamental polygon."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .group import DEFAULT_MAX_ELEMENTS, TranslateBall, enumerate_ball
from .hyperbolic import Isometry
from .surface import SurfaceParams, dual_isometry

VIEW = 1000.0
COLLINEAR_TOL = 1e-12
POLYGON_STROKE = "#000000"
DUAL_STROKE = "#1f4fd8"


@dataclass(frozen=True)
class GeodesicArc:
    """A geodesic segment drawn as a Euclidean arc, or a straight segment when ``radius`` is None."""

    start: complex
    end: complex
    center: complex | None
    radius: float | None

    @property
    def straight(self) -> bool:
        return self.radius is None

    def orthogonality_error(self) -> float:
        """Cosine of the angle at which the circle meets the unit circle (0 when orthogonal)."""
        if self.straight:
            return abs((self.start * self.end.conjugate()).imag)
        # law of cosines in the triangle 0, center, crossing point
        d = abs(self.center)
        return abs((1.0 + self.radius**2 - d * d) / (2.0 * self.radius))

    def incidence_error(self) -> float:
        """How far the endpoints and the inverse of ``start`` are from the drawn circle."""
        if self.straight:
            return 0.0
        pts = (self.start, self.end, 1.0 / self.start.conjugate())
        return max(abs(abs(z - self.center) - self.radius) / max(1.0, self.radius) for z in pts)


def geodesic_arc(p, q) -> GeodesicArc:
    """The circle through ``p``, ``q`` and the inversion ``1/conj(p)`` of ``p``."""
    p, q = complex(p), complex(q)
    if abs((p * q.conjugate()).imag) < COLLINEAR_TOL:
        return GeodesicArc(p, q, None, None)
    # orthogonal circles satisfy |z|^2 - 2 Re(conj(c) z) + 1 = 0; two linear equations in c
    m = np.array([[p.real, p.imag], [q.real, q.imag]])
    rhs = np.array([(abs(p) ** 2 + 1) / 2, (abs(q) ** 2 + 1) / 2])
    cx, cy = np.linalg.solve(m, rhs)
    center = complex(cx, cy)
    return GeodesicArc(p, q, center, math.sqrt(abs(center) ** 2 - 1.0))


def to_screen(z: complex) -> tuple[float, float]:
    return VIEW / 2 * (1 + z.real), VIEW / 2 * (1 - z.imag)


def _fmt(x: float) -> str:
    return f"{x:.4f}"


def arc_path(arc: GeodesicArc) -> str:
    x0, y0 = to_screen(arc.start)
    x1, y1 = to_screen(arc.end)
    if arc.straight:
        return f"M {_fmt(x0)} {_fmt(y0)} L {_fmt(x1)} {_fmt(y1)}"
    cx, cy = to_screen(arc.center)
    # positive SVG angle direction is clockwise on screen; take the minor arc
    sweep = 1 if (x0 - cx) * (y1 - cy) - (y0 - cy) * (x1 - cx) > 0 else 0
    r = _fmt(arc.radius * VIEW / 2)
    return f"M {_fmt(x0)} {_fmt(y0)} A {r} {r} 0 0 {sweep} {_fmt(x1)} {_fmt(y1)}"


def _side_key(p: complex, q: complex) -> tuple:
    a = (round(p.real, 9), round(p.imag, 9))
    b = (round(q.real, 9), round(q.imag, 9))
    return (a, b) if a <= b else (b, a)


def _polygon_sides(polygons: list[list[complex]]) -> list[GeodesicArc]:
    seen, arcs = set(), []
    for verts in polygons:
        n = len(verts)
        for i in range(n):
            p, q = verts[i], verts[(i + 1) % n]
            key = _side_key(p, q)
            if key not in seen:
                seen.add(key)
                arcs.append(geodesic_arc(p, q))
    return arcs


def tile_elements(params: SurfaceParams, ball: TranslateBall | None, depth: int) -> list[Isometry]:
    """Group elements of word length at most ``depth``, in ball order."""
    if depth < 0:
        raise DomainError("depth must be >= 0")
    # a word of length d moves 0 by at most d s, and so do all its prefixes
    need = depth * params.s
    if ball is None or ball.cutoff < need:
        ball = enumerate_ball(params, max(need, 1e-9), DEFAULT_MAX_ELEMENTS)
    return [ball.isometry(i) for i in range(len(ball)) if ball.length[i] <= depth]


@dataclass
class Tessellation:
    polygons: list[list[complex]]
    duals: list[list[complex]]
    polygon_arcs: list[GeodesicArc]
    dual_arcs: list[GeodesicArc]


def tessellation(params: SurfaceParams, ball: TranslateBall | None, depth: int, include_dual: bool = False) -> Tessellation:
    elements = tile_elements(params, ball, depth)
    base = list(params.vertices)
    polygons = [[f(v) for v in base] for f in elements]
    duals: list[list[complex]] = []
    if include_dual:
        phis = [dual_isometry(params, k) for k in range(params.n_sides)]
        seen = set()
        for f in elements:
            for k, phi in enumerate(phis):
                verts = [f(phi(v)) for v in base]
                center = f(params.vertex(k))
                key = (round(center.real, 9), round(center.imag, 9))
                if key not in seen:
                    seen.add(key)
                    duals.append(verts)
    return Tessellation(polygons, duals, _polygon_sides(polygons), _polygon_sides(duals))


def render_tessellation_svg(
    params: SurfaceParams, ball: TranslateBall | None = None, depth: int = 1, include_dual: bool = False
) -> str:
    """SVG 1.1 document of the tiles within ``depth`` letters of the identity."""
    tess = tessellation(params, ball, depth, include_dual)
    half = _fmt(VIEW / 2)
    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{int(VIEW)}" height="{int(VIEW)}" '
        f'viewBox="0 0 {int(VIEW)} {int(VIEW)}">',
        f'<circle class="boundary" cx="{half}" cy="{half}" r="{half}" fill="none" stroke="#808080" stroke-width="1"/>',
        f'<g class="tiles" fill="none" stroke="{POLYGON_STROKE}" stroke-width="1">',
    ]
    lines += [f'<path d="{arc_path(a)}"/>' for a in tess.polygon_arcs]
    lines.append("</g>")
    if include_dual:
        lines.append(f'<g class="dual" fill="none" stroke="{DUAL_STROKE}" stroke-width="1">')
        lines += [f'<path d="{arc_path(a)}"/>' for a in tess.dual_arcs]
        lines.append("</g>")
    lines.append("</svg>")
    return "\n".join(lines) + "\n"
