"""Distances on the quotient surface.

``quotient_distance`` is the minimum of ``delta(z', f(w'))`` over the group,
where ``z'`` and ``w'`` are the representatives in the fundamental polygon.
Since both lie within ``R`` of 0, an element can only beat the current best
``m`` if it moves 0 by less than ``|z'| + |w'| + m`` (hyperbolic norms), so a
ball of radius ``4R`` always certifies the minimum.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ConstructionError, DomainError, InsufficientBallError
from .group import TranslateBall, index_to_letter, word_isometry
from .hyperbolic import Isometry, direction, disk_distance, disk_distances, orbit_distances
from .surface import (
    MAX_REDUCTION_STEPS,
    SurfaceParams,
    in_closed_polygon,
    reduce_point,
)

AGREEMENT_TOL = 1e-10
DUAL_TOL = 1e-9


@dataclass(frozen=True)
class CanonicalPoint:
    """Representative in the closed polygon and the word that produced it."""

    representative: complex
    reducing_word: tuple[int, ...]

    def isometry(self, params: SurfaceParams) -> Isometry:
        return word_isometry(params, self.reducing_word)


def reduce_to_fundamental(params: SurfaceParams, z, max_steps: int = MAX_REDUCTION_STEPS) -> CanonicalPoint:
    rep, indices = reduce_point(params, z, max_steps)
    word = tuple(index_to_letter(k, params.genus) for k in indices)
    return CanonicalPoint(rep, word)


@dataclass(frozen=True)
class QuotientDistance:
    """A certified minimum together with the element realising it."""

    distance: float
    z_rep: complex
    w_rep: complex
    element: int

    def __float__(self) -> float:
        return self.distance


def _require_4r(params: SurfaceParams, ball: TranslateBall) -> None:
    ball.require(4.0 * params.R, "quotient distance")


def certified_minimum(ball: TranslateBall, z: complex, w: complex) -> tuple[float, int]:
    """Certified minimum of ``delta(z, f(w))`` over the ball for ``z, w`` in the polygon."""
    reach = disk_distance(0.0, z) + disk_distance(0.0, w)
    best = disk_distance(z, w)
    n = ball.prefix(reach + best)
    dist = orbit_distances(z, w, ball.a[:n], ball.c[:n])
    i = int(np.argmin(dist))
    if reach + float(dist[i]) > ball.cutoff + 1e-9:
        raise InsufficientBallError("ball too small to certify the quotient distance")
    return float(dist[i]), i


def quotient_distance_detail(params: SurfaceParams, z, w, ball: TranslateBall) -> QuotientDistance:
    _require_4r(params, ball)
    zr = reduce_point(params, z)[0]
    wr = reduce_point(params, w)[0]
    dist, i = certified_minimum(ball, zr, wr)
    return QuotientDistance(dist, zr, wr, i)


def quotient_distance(params: SurfaceParams, z, w, ball: TranslateBall) -> float:
    """Distance between the cosets of ``z`` and ``w`` on the surface."""
    return quotient_distance_detail(params, z, w, ball).distance


def quotient_distances(params: SurfaceParams, z, ws, ball: TranslateBall) -> np.ndarray:
    """:func:`quotient_distance` from one point to many."""
    _require_4r(params, ball)
    zr = reduce_point(params, z)[0]
    out = np.empty(len(ws))
    for j, w in enumerate(ws):
        out[j] = certified_minimum(ball, zr, reduce_point(params, w)[0])[0]
    return out


def d0(params: SurfaceParams, z, ball: TranslateBall | None = None) -> float:
    """Quotient distance from ``[z]`` to ``[0]``.

    The representative's distance to 0 is exact because the polygon is the
    Dirichlet domain of 0. With a ball, the general orbit minimum is computed
    too and the two must agree.
    """
    rep = reduce_point(params, z)[0]
    direct = disk_distance(0.0, rep)
    if ball is not None:
        general = quotient_distance(params, z, 0.0, ball)
        if abs(general - direct) > AGREEMENT_TOL:
            raise ConstructionError(f"d0 paths disagree: {general!r} vs {direct!r}")
        if in_closed_polygon(params, z) and abs(disk_distance(0.0, z) - general) > AGREEMENT_TOL:
            raise ConstructionError("d0 Dirichlet shortcut disagrees with the orbit minimum")
    return direct


def dv(params: SurfaceParams, z, ball: TranslateBall | None = None) -> float:
    """Quotient distance from ``[z]`` to the quotient vertex ``[v]``.

    For a representative in the polygon this is the distance to the nearest
    polygon vertex; with a ball the full vertex orbit is searched as well.
    """
    rep = reduce_point(params, z)[0]
    direct = float(disk_distances(rep, np.array(params.vertices)).min())
    if ball is not None:
        general = quotient_distance(params, z, params.vertex(0), ball)
        if abs(general - direct) > AGREEMENT_TOL:
            raise ConstructionError(f"dv paths disagree: {general!r} vs {direct!r}")
    return direct


@dataclass(frozen=True)
class DualRepresentatives:
    """Translates of ``[w]`` in the dual polygons centred at ``v_1`` and ``v_2``."""

    w1: complex
    w2: complex
    element1: int
    element2: int


def _nearest_translate(ball: TranslateBall, w: complex, target: complex, tol: float) -> tuple[complex, int, float]:
    dist = orbit_distances(target, w, ball.a, ball.c)
    best = float(dist.min())
    # lowest ball index among near-ties keeps boundary cases reproducible
    i = int(np.flatnonzero(dist <= best + tol)[0])
    return complex(ball.isometry(i)(w)), i, float(dist[i])


def dual_representatives(params: SurfaceParams, w, ball: TranslateBall, tol: float = DUAL_TOL) -> DualRepresentatives:
    """The translates of ``w`` nearest to ``v_1`` and ``v_2``.

    The dual polygons are the Dirichlet domains of the vertex orbit, so the
    translate nearest to ``v_i`` is the one inside the dual polygon at ``v_i``.
    """
    _require_4r(params, ball)
    rep = reduce_point(params, w)[0]
    b = dv(params, rep)
    if b > params.s / 2.0 + tol:
        raise DomainError(f"dv(w) = {b:.12f} exceeds s/2 = {params.s / 2:.12f}")
    out = []
    for k in (1, 2):
        target = params.vertex(k)
        point, i, dist = _nearest_translate(ball, rep, target, tol)
        if abs(dist - b) > tol:
            raise InsufficientBallError(f"no translate of w found in the dual polygon at v_{k}")
        out.append((point, i))
    return DualRepresentatives(out[0][0], out[1][0], out[0][1], out[1][1])


def dual_angles(params: SurfaceParams, reps: DualRepresentatives) -> tuple[float, float]:
    """Signed angles of ``w_1`` at ``v_1`` and ``w_2`` at ``v_2``.

    Both are measured clockwise from the direction ``v_1 -> v_2`` (continued
    through ``v_2`` for the second), i.e. away from the origin.
    """
    v1, v2 = params.vertex(1), params.vertex(2)
    theta1 = direction(v1, v2) - direction(v1, reps.w1)
    theta2 = direction(v2, v1) + math.pi - direction(v2, reps.w2)
    return math.remainder(theta1, 2.0 * math.pi), math.remainder(theta2, 2.0 * math.pi)
