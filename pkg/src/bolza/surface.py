"""The generalized Bolza surface of genus g.

The surface is the regular 4g-gon with interior angles pi/2g, opposite sides
glued by the 2g translations ``t_k`` and their inverses. Everything here is
derived from the genus alone; enumeration of the group lives in
:mod:`bolza.group`.
"""

from __future__ import annotations

import cmath
import enum
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import ConstructionError, DomainError, InsufficientBallError, NumericalPathologyError
from .hyperbolic import (
    GEOMETRIC_TOL,
    Isometry,
    acosh,
    apply_isometry,
    direction,
    disk_distance,
    disk_distances,
    half_turn,
    midpoint,
    rotation_isometry,
    translation_to_origin,
)

BOUNDARY_TOL = 1e-10
POLYGON_TOL = 1e-9
MAX_REDUCTION_STEPS = 10_000


@dataclass(frozen=True)
class SurfaceParams:
    """Constants of the genus-``g`` surface.

    ``side_pairings[k]`` for ``k < 2g`` is the generator ``t_k``; index
    ``k + 2g`` holds its inverse. The letter ``k`` always translates the
    origin towards angle ``k pi / 2g``.
    """

    genus: int
    R: float
    s: float
    R_prime: float
    s_prime: float
    vertices: tuple[complex, ...]
    side_pairings: tuple[Isometry, ...] = field(repr=False)

    @property
    def n_sides(self) -> int:
        return 4 * self.genus

    @property
    def generators(self) -> tuple[Isometry, ...]:
        return self.side_pairings[: 2 * self.genus]

    @property
    def inverses(self) -> tuple[Isometry, ...]:
        return self.side_pairings[2 * self.genus :]

    @property
    def area(self) -> float:
        """Gauss-Bonnet area ``4 pi (g - 1)``."""
        return 4.0 * math.pi * (self.genus - 1)

    @property
    def sector_angle(self) -> float:
        """Angle ``pi / 2g`` subtended at 0 by each side."""
        return math.pi / (2 * self.genus)

    @property
    def rotation(self) -> Isometry:
        """The symmetry rotating ``v_k`` to ``v_{k+1}``."""
        return rotation_isometry(self.sector_angle)

    def vertex(self, k: int) -> complex:
        return self.vertices[k % self.n_sides]


def surface_params(genus: int) -> SurfaceParams:
    if int(genus) != genus or genus < 2:
        raise DomainError(f"genus must be an integer >= 2, got {genus!r}")
    genus = int(genus)
    cot = 1.0 / math.tan(math.pi / (4 * genus))
    R = acosh(cot * cot)
    s = 2.0 * acosh(cot)
    return SurfaceParams(
        genus=genus,
        R=R,
        s=s,
        R_prime=math.tanh(R / 2.0),
        s_prime=math.tanh(s / 4.0),
        vertices=tuple(vertices_for(genus, R)),
        side_pairings=tuple(side_pairings_for(genus, s)),
    )


def vertices_for(genus: int, R: float) -> list[complex]:
    radius = math.tanh(R / 2.0)
    step = math.pi / (2 * genus)
    return [radius * cmath.exp(1j * (k - 0.5) * step) for k in range(4 * genus)]


def side_pairings_for(genus: int, s: float) -> list[Isometry]:
    # t_{k+2g} has c negated, which is exactly the inverse of t_k
    ch, sh = math.cosh(s / 2.0), math.sinh(s / 2.0)
    step = math.pi / (2 * genus)
    return [Isometry(ch, sh * cmath.exp(-1j * k * step)) for k in range(4 * genus)]


def vertices(params: SurfaceParams) -> list[complex]:
    return list(params.vertices)


def generators(params: SurfaceParams) -> list[Isometry]:
    """The ``2g`` generators followed by their inverses."""
    return list(params.side_pairings)


def side_midpoint(params: SurfaceParams, k: int) -> complex:
    """Midpoint of side ``v_k v_{k+1}``, at distance ``s/2`` from 0."""
    return math.tanh(params.s / 4.0) * cmath.exp(1j * k * params.sector_angle)


def edge_radius(params: SurfaceParams, angle: float) -> float:
    """Distance from 0 to the polygon boundary along the ray at ``angle``."""
    step = params.sector_angle
    k = math.floor(angle / step + 0.5)
    off = angle - k * step
    return math.atanh(min(math.tanh(params.s / 2.0) / math.cos(off), 1.0 - 1e-16))


class Membership(enum.Enum):
    INTERIOR = "interior"
    BOUNDARY = "boundary"
    OUTSIDE = "outside"


def dirichlet_margins(params: SurfaceParams, z) -> np.ndarray:
    """``delta(t(0), z) - delta(0, z)`` over the 4g side pairings ``t``."""
    z = complex(z)
    centers = np.array([t(0.0) for t in params.side_pairings])
    return disk_distances(z, centers) - disk_distance(0.0, z)


def contains_fundamental(params: SurfaceParams, z, tol: float = BOUNDARY_TOL) -> Membership:
    """Classify ``z`` against the closed fundamental polygon via its Dirichlet half-planes."""
    worst = dirichlet_margins(params, z).min()
    if worst > tol:
        return Membership.INTERIOR
    if worst >= -tol:
        return Membership.BOUNDARY
    return Membership.OUTSIDE


def in_closed_polygon(params: SurfaceParams, z, tol: float = BOUNDARY_TOL) -> bool:
    return contains_fundamental(params, z, tol) is not Membership.OUTSIDE


def reduce_point(params: SurfaceParams, z, max_steps: int = MAX_REDUCTION_STEPS) -> tuple[complex, list[int]]:
    """Move ``z`` into the closed polygon by greedy side pairings.

    Returns the representative and the list of side-pairing indices in
    product order: the representative equals ``t_{w[0]} ... t_{w[-1]}(z)``.
    """
    z = complex(z)
    applied: list[int] = []
    a = np.array([t.a for t in params.side_pairings])
    c = np.array([t.c for t in params.side_pairings])
    for _ in range(max_steps):
        images = (a * z + np.conj(c)) / (c * z + np.conj(a))
        k = int(np.argmin(np.abs(images)))
        # strict decrease of |z| is strict decrease of delta(0, z)
        if abs(images[k]) >= abs(z) * (1.0 - 1e-14):
            return z, applied[::-1]
        z = complex(images[k])
        applied.append(k)
    raise NumericalPathologyError(f"reduction did not terminate within {max_steps} steps")


@dataclass(frozen=True)
class Polygon:
    center: complex
    vertices: tuple[complex, ...]

    def circumradii(self) -> np.ndarray:
        return disk_distances(self.center, np.array(self.vertices))

    def side_lengths(self) -> np.ndarray:
        v = self.vertices
        return np.array([disk_distance(v[i], v[(i + 1) % len(v)]) for i in range(len(v))])


def geodesic_side(p, q, z) -> float:
    """Signed side of ``z`` relative to the oriented geodesic ``p -> q`` (positive = left)."""
    move = translation_to_origin(p)
    return (apply_isometry(move, z) * apply_isometry(move, q).conjugate()).imag


@dataclass(frozen=True)
class Triangle:
    vertices: tuple[complex, complex, complex]

    @property
    def degenerate(self) -> bool:
        a, b, c = self.vertices
        return abs(geodesic_side(a, b, c)) < 1e-15

    def contains(self, z, tol: float = 1e-12) -> bool:
        a, b, c = self.vertices
        for p, q, r in ((a, b, c), (b, c, a), (c, a, b)):
            if geodesic_side(p, q, z) * math.copysign(1.0, geodesic_side(p, q, r)) < -tol:
                return False
        return True


def fundamental_triangle(params: SurfaceParams) -> Triangle:
    """The triangle ``T`` with vertices 0, ``v_1``, ``v_2``."""
    return Triangle((0j, params.vertex(1), params.vertex(2)))


def _ccw_about(center: complex, points) -> list[complex]:
    key = [direction(center, p) % (2.0 * math.pi) for p in points]
    return [p for _, p in sorted(zip(key, points), key=lambda kv: kv[0])]


def dual_polygon(params: SurfaceParams, k: int, ball) -> Polygon:
    """The dual polygon centred at ``v_k``: orbit points of 0 at distance ``R`` from it."""
    n = params.n_sides
    if not 0 <= k < n:
        raise DomainError(f"vertex index {k} outside 0..{n - 1}")
    if ball.cutoff < 2.0 * params.R - POLYGON_TOL:
        raise InsufficientBallError(
            f"dual polygon needs a ball of radius >= 2R = {2 * params.R:.6f}, got {ball.cutoff:.6f}"
        )
    center = params.vertex(k)
    images = ball.orbit(0.0)
    dist = disk_distances(center, images)
    hits = images[np.abs(dist - params.R) <= POLYGON_TOL]
    if len(hits) != n:
        raise ConstructionError(f"expected {n} dual vertices around v_{k}, found {len(hits)}")
    return Polygon(center, tuple(_ccw_about(center, [complex(h) for h in hits])))


def dual_isometry(params: SurfaceParams, k: int, ball=None) -> Isometry:
    """Half-turn about the midpoint of ``0 v_k``, mapping the polygon onto its dual at ``v_k``.

    The image of every polygon vertex must be an orbit point of 0 at distance
    ``R`` from ``v_k``; with ``ball`` given the image is also compared with
    :func:`dual_polygon`.
    """
    n = params.n_sides
    if not 0 <= k < n:
        raise DomainError(f"vertex index {k} outside 0..{n - 1}")
    center = params.vertex(k)
    phi = half_turn(midpoint(0.0, center))
    images = [phi(v) for v in params.vertices]
    for img in images:
        rep, _ = reduce_point(params, img)
        if abs(disk_distance(center, img) - params.R) > POLYGON_TOL or abs(rep) > 1e-9:
            raise ConstructionError(f"half-turn image {img!r} is not a dual vertex of v_{k}")
    if ball is not None:
        expected = dual_polygon(params, k, ball).vertices
        got = _ccw_about(center, images)
        if max(abs(x - y) for x, y in zip(got, expected)) > POLYGON_TOL:
            raise ConstructionError(f"half-turn about 0 v_{k} does not map P onto its dual polygon")
    return phi


def interior_angles(params: SurfaceParams) -> np.ndarray:
    """Interior angle at each polygon vertex from adjacent side tangents."""
    out = []
    for k in range(params.n_sides):
        v = params.vertex(k)
        turn = direction(v, params.vertex(k - 1)) - direction(v, params.vertex(k + 1))
        out.append(turn % (2.0 * math.pi))
    return np.array(out)


__all__ = [
    "GEOMETRIC_TOL",
    "Membership",
    "Polygon",
    "SurfaceParams",
    "Triangle",
    "contains_fundamental",
    "dual_isometry",
    "dual_polygon",
    "edge_radius",
    "fundamental_triangle",
    "generators",
    "in_closed_polygon",
    "interior_angles",
    "reduce_point",
    "side_midpoint",
    "surface_params",
    "vertices",
]
