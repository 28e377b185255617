import cmath
import math

import mpmath
import numpy as np
import pytest

from bolza import enumerate_ball, surface_params
from bolza.errors import DomainError
from bolza.hyperbolic import disk_distance, polar_point
from bolza.surface import (
    Membership,
    Triangle,
    contains_fundamental,
    dual_isometry,
    dual_polygon,
    edge_radius,
    fundamental_triangle,
    generators,
    in_closed_polygon,
    interior_angles,
    reduce_point,
    side_midpoint,
    vertices,
)


def test_genus_two_constants(params2):
    assert math.cosh(params2.R) == pytest.approx(3 + 2 * math.sqrt(2), rel=1e-14)
    assert params2.R == pytest.approx(2.4484524, abs=1e-7)
    assert params2.s == pytest.approx(float(2 * mpmath.acosh(1 + mpmath.sqrt(2))), abs=1e-13)
    assert math.cosh(params2.s / 2) == pytest.approx(1 + math.sqrt(2), rel=1e-14)
    assert params2.R_prime == pytest.approx(0.8409, abs=1e-4)
    assert params2.area == pytest.approx(4 * math.pi)


def test_genus_three_radius(params3):
    assert math.cosh(params3.R) == pytest.approx(7 + 4 * math.sqrt(3), rel=1e-14)
    assert params3.R == pytest.approx(float(mpmath.acosh(7 + 4 * mpmath.sqrt(3))), abs=1e-13)
    assert params3.R == pytest.approx(3.32577, abs=1e-5)


@pytest.mark.parametrize("genus", range(2, 51))
def test_half_side_identity(genus):
    p = surface_params(genus)
    # relative: cosh R grows like g^2, so an absolute 1e-12 is below double resolution
    assert math.cosh(p.s / 2) ** 2 == pytest.approx(math.cosh(p.R), rel=1e-12)
    assert math.cosh(p.R) == pytest.approx(1 / math.tan(math.pi / (4 * genus)) ** 2, rel=1e-12)


@pytest.mark.parametrize("bad", [1, 0, -3, 2.5])
def test_rejects_bad_genus(bad):
    with pytest.raises(DomainError):
        surface_params(bad)


@pytest.mark.parametrize("genus", [2, 3, 5])
def test_vertices(genus):
    p = surface_params(genus)
    vs = vertices(p)
    assert len(vs) == 4 * genus
    for k, v in enumerate(vs):
        assert abs(v) == pytest.approx(p.R_prime, abs=1e-15)
        assert math.remainder(cmath.phase(v) - (k - 0.5) * p.sector_angle, 2 * math.pi) == pytest.approx(0, abs=1e-14)
        assert disk_distance(0, v) == pytest.approx(p.R, abs=1e-12)


@pytest.mark.parametrize("genus", [2, 3, 4])
def test_generators(genus):
    p = surface_params(genus)
    gens = generators(p)
    assert len(gens) == 4 * genus
    n = 2 * genus
    for k, t in enumerate(gens[:n]):
        assert abs(t.determinant - 1) < 1e-12
        assert disk_distance(0, t(0)) == pytest.approx(p.s, abs=1e-10)
        assert (t @ gens[k + n]).is_close(type(t).identity(), 1e-12)
        # t_k glues the opposite side onto side v_k v_{k+1}
        image = {complex(round(t(p.vertex(j)).real, 9), round(t(p.vertex(j)).imag, 9)) for j in (k + n, k + n + 1)}
        target = {complex(round(p.vertex(j).real, 9), round(p.vertex(j).imag, 9)) for j in (k, k + 1)}
        assert image == target


def test_membership(params2):
    assert contains_fundamental(params2, 0) is Membership.INTERIOR
    for v in params2.vertices:
        assert contains_fundamental(params2, v) is Membership.BOUNDARY
    for k in range(params2.n_sides):
        assert contains_fundamental(params2, side_midpoint(params2, k)) is Membership.BOUNDARY
        assert contains_fundamental(params2, params2.side_pairings[k](0)) is Membership.OUTSIDE


def test_edge_radius_hits_boundary(params3):
    for psi in np.linspace(0, 2 * math.pi, 37):
        z = polar_point(edge_radius(params3, psi), psi)
        assert contains_fundamental(params3, z) is Membership.BOUNDARY


def test_reduce_point(params2):
    rng = np.random.default_rng(1)
    for _ in range(200):
        z = 0.995 * math.sqrt(rng.uniform()) * cmath.exp(2j * math.pi * rng.uniform())
        rep, word = reduce_point(params2, z)
        assert in_closed_polygon(params2, rep)
        f = type(params2.side_pairings[0]).identity()
        for k in word:
            f = f @ params2.side_pairings[k]
        assert f(z) == pytest.approx(rep, abs=1e-9)


@pytest.mark.parametrize("genus", [2, 3, 6])
def test_interior_angles(genus):
    p = surface_params(genus)
    assert interior_angles(p) == pytest.approx(np.full(p.n_sides, math.pi / (2 * genus)), abs=1e-9)


def test_fundamental_triangle(params2):
    t = fundamental_triangle(params2)
    assert not t.degenerate
    assert t.contains(polar_point(1.0, params2.sector_angle))
    assert not t.contains(polar_point(1.0, -params2.sector_angle))
    assert Triangle((0j, 0.5, 0.25)).degenerate


@pytest.mark.parametrize("genus", [2, 3])
def test_dual_polygon(genus):
    p = surface_params(genus)
    ball = enumerate_ball(p, 2 * p.R)
    for k in (0, 1, p.n_sides - 1):
        poly = dual_polygon(p, k, ball)
        assert len(poly.vertices) == p.n_sides
        assert poly.circumradii() == pytest.approx(np.full(p.n_sides, p.R), abs=1e-9)
        assert poly.side_lengths() == pytest.approx(np.full(p.n_sides, p.s), abs=1e-9)
        assert min(abs(v) for v in poly.vertices) < 1e-12  # the origin is a dual vertex
        phi = dual_isometry(p, k, ball)
        assert phi(0) == pytest.approx(p.vertex(k), abs=1e-12)
        assert phi(p.vertex(k)) == pytest.approx(0, abs=1e-12)


def test_dual_polygon_needs_big_ball(params2):
    from bolza.errors import InsufficientBallError

    small = enumerate_ball(params2, params2.R)
    with pytest.raises(InsufficientBallError):
        dual_polygon(params2, 0, small)
    with pytest.raises(DomainError):
        dual_isometry(params2, 99)
