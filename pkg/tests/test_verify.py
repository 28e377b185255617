import math

import numpy as np
import pytest
from scipy.optimize import brentq

from bolza import surface_params
from bolza.errors import DomainError
from bolza.hyperbolic import disk_distance, midpoint, point_at
from bolza.quotient import d0, dv, quotient_distance
from bolza.surface import side_midpoint
from bolza import verify as V


def test_report_pass_logic():
    ok = V.VerificationReport("x", [V.Part("a", 0.5, 0.0), V.Part("b", -1e-10, 1e-9)])
    assert ok.passed and ok.worst.name == "b" and ok.samples == 2
    bad = V.VerificationReport("x", [V.Part("a", -2e-9, 1e-9)])
    assert not bad.passed and bad.summary().startswith("FAIL")
    loose = V.with_tolerances(bad, {"x.a": 1e-8})
    assert loose.passed
    assert V.part_names([bad]) == {"a", "x.a"}


def test_theorem2(params2, ball2, params3, ball3):
    for p, b in ((params2, ball2), (params3, ball3)):
        rep = V.verify_theorem2(p, b)
        assert rep.passed
        assert rep.details["dirichlet_failures"] == 0
        assert abs(rep.details["quotient_distance"] - p.R) < 1e-9


def test_prop2_trivial_pair(params2, ball2):
    z2, w2, rep = V.verify_prop2_reduction(params2, ball2, 0, params2.vertex(1))
    assert rep.passed
    assert rep.details["distance"] == pytest.approx(params2.R, abs=1e-9)
    assert dv(params2, w2) <= params2.s / 2 + 1e-9


def test_prop2_random(params2, ball2):
    rep = V.prop2_suite(params2, ball2, 300, seed=1)
    assert rep.passed
    assert sum(rep.details["cases"]) == 300


def test_sector_index(params2):
    for k in range(params2.n_sides):
        assert V.sector_index(params2, side_midpoint(params2, k)) == k


def test_omega_domain_boundary_samples(params2, ball2):
    w = point_at(params2.vertex(1), 0.3, 0.8)
    dom = V.OmegaDomain.build(params2, w, ball2)
    for pts in dom.boundary(40).values():
        for z in pts:
            assert V.triangle_slack(params2, z) >= -1e-9
            assert disk_distance(0, z) >= dom.b - 1e-9
    for z in dom.interior(10):
        assert disk_distance(0, z) >= dom.b


def test_theorem3_random(params2, ball2):
    rep = V.theorem3_suite(params2, ball2, n_w=20, grid_n=30, seed=2)
    assert rep.passed and rep.details["failures"] == 0


def test_theorem3_degenerate_arc(params2, ball2):
    # w in the vertex orbit: b = 0 and the arc collapses to the origin
    rep = V.verify_theorem3(params2, ball2, params2.vertex(1), 30)
    assert rep.passed and rep.details["b"] == pytest.approx(0, abs=1e-12)


def test_theorem3_bisector(params2, ball2):
    # w on the bisector of v1 v2 sits at the side midpoint direction from v1
    v1, v2 = params2.vertex(1), params2.vertex(2)
    w = midpoint(v1, v2)
    assert V.verify_theorem3(params2, ball2, w, 40).passed


def test_theorem4(params2, ball2):
    rep = V.theorem4_suite(params2, ball2, n_w=30, samples_n=60, seed=3)
    assert rep.passed and rep.details["violations"] == 0
    # endpoint: w a vertex, so z = v1 gives min distance 0 and the chain holds with equality at z = v1
    assert V.verify_theorem4_boundary(params2, ball2, params2.vertex(1), 50).passed


def test_case2_expression_vanishes_on_circle(params2):
    a, phi = 0.9 * params2.s / 2, 0.3
    def gap(theta):
        z, w1, _ = V.case2_configuration(params2, a, phi, theta)
        return disk_distance(z, w1) - params2.R
    grid = np.linspace(-math.pi, math.pi, 721)
    vals = [gap(t) for t in grid]
    roots = [brentq(gap, grid[i], grid[i + 1], xtol=1e-15) for i in range(720) if vals[i] * vals[i + 1] < 0]
    assert roots
    for t in roots:
        sample = V.CaseSample(a=a, b=a, phi=phi, theta1=t, theta2=t)
        assert V.case2_sign(params2, sample) == pytest.approx(0, abs=1e-7)


def test_case2_sign_agreement(params2):
    rep = V.case2_sign_agreement(params2, 2000, seed=4)
    assert rep.passed and rep.details["agreement"] == 1.0


def test_case2_small_b(params2):
    rng = np.random.default_rng(5)
    a = 1e-6
    for _ in range(300):
        phi = params2.sector_angle * rng.uniform()
        theta = math.pi * (2 * rng.uniform() - 1)
        z, w1, _ = V.case2_configuration(params2, a, phi, theta)
        g = disk_distance(z, w1) - params2.R
        if abs(g) > 1e-7:
            assert np.sign(V.case2_sign(params2, V.CaseSample(a=a, b=a, phi=phi, theta1=theta))) == np.sign(g)


def test_case2_rejects_zero(params2):
    with pytest.raises(DomainError):
        V.case2_sign(params2, V.CaseSample(a=0.0, b=0.0, phi=0.1, theta1=0.2))


@pytest.mark.parametrize("genus", [2, 3, 4, 5])
def test_case2_disjointness(genus):
    p = surface_params(genus)
    rep = V.case2_disjointness(p, 2000, 2000, seed=6)
    assert rep.passed
    # the two margins touch zero only in the symmetric direction
    assert rep.details["lower_touch_phi"] == pytest.approx(math.pi / (4 * genus), abs=1e-3)


def test_case3(params2):
    rep = V.case3_margin(params2, 1001, 500, seed=7)
    assert rep.passed
    assert math.cosh(params2.s / 2) == pytest.approx(1 + math.sqrt(2))


def test_case3_window_extremal(params2):
    s = params2.s
    gap = V.case3_feasibility_gap(params2, s / 2, s / 2)
    assert float(gap) == pytest.approx(0, abs=1e-10)


def test_diameter_estimate(params2, ball2):
    est, pair, rep = V.diameter_estimate(params2, ball2, 400, 300, seed=8)
    assert rep.passed
    assert est == pytest.approx(params2.R, abs=1e-9)
    assert pair[0] == 0
    assert rep.details["random_max"] <= params2.R + 1e-9


def test_literature_bounds_genus_two(params2):
    ell = 2 * math.acosh(1 + math.sqrt(2))
    rep = V.literature_bounds(params2, ell, params2.R)
    assert rep.passed
    parts = {p.name: p.margin for p in rep.parts}
    assert parts["area_lower"] == pytest.approx(math.cosh(params2.R) - 3)
    assert 2 * math.sinh(ell / 4) * params2.R == pytest.approx(4.12, abs=0.01)
    with pytest.raises(DomainError):
        V.literature_bounds(params2, 0.0, 1.0)


def test_symmetries(params2, ball2):
    rep = V.verify_symmetries(params2, ball2, 30, seed=9)
    assert rep.passed


def test_upper_bound_sweep(params2, ball2):
    rng = np.random.default_rng(10)
    zs = V.random_triangle_points(params2, 100, rng)
    ws = V.random_near_vertex(params2, 100, rng)
    for z, w in zip(zs, ws):
        assert quotient_distance(params2, z, w, ball2) <= params2.R + 1e-9
        assert d0(params2, z) >= 0


def test_reports_are_deterministic(params2, ball2):
    a = V.run_suite(params2, ball2, ["theorem2", "case2_sign", "case3_margin"], seed=11)
    b = V.run_suite(params2, ball2, ["theorem2", "case2_sign", "case3_margin"], seed=11)
    assert [r.margin for r in a.reports] == [r.margin for r in b.reports]
    with pytest.raises(DomainError):
        V.run_suite(params2, ball2, ["nope"])
