"""Numerical verification of the diameter theorem and its supporting steps.

Every check returns a :class:`VerificationReport`. A report is built from
named parts, each a signed margin with a tolerance; a part passes when its
margin is ``>= -tolerance``. Margins are slacks: positive means the
inequality holds with room to spare, and equality checks report ``-|error|``.
"""

from __future__ import annotations

import cmath
import math
import time
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import minimize_scalar

from .errors import DomainError
from .group import TranslateBall, enumerate_ball, systole
from .hyperbolic import (
    GeodesicSegment,
    cosine_law_side,
    direction,
    disk_distance,
    disk_distances,
    point_at,
    polar_point,
    rotation_isometry,
)
from .quotient import (
    DualRepresentatives,
    certified_minimum,
    d0,
    dual_angles,
    dv,
    dual_representatives,
    quotient_distance,
)
from .surface import (
    SurfaceParams,
    dual_isometry,
    edge_radius,
    fundamental_triangle,
    geodesic_side,
    in_closed_polygon,
    reduce_point,
)

DEFAULT_SEED = 0
DISTANCE_TOL = 1e-9
DEAD_BAND = 1e-7
IDENTITY_TOL = 1e-12
MEMBERSHIP_TOL = 1e-8


@dataclass(frozen=True)
class Part:
    name: str
    margin: float
    tolerance: float
    samples: int = 1

    @property
    def passed(self) -> bool:
        return bool(self.margin >= -self.tolerance)


@dataclass
class VerificationReport:
    name: str
    parts: list[Part]
    parameters: dict = field(default_factory=dict)
    details: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(p.passed for p in self.parts)

    @property
    def worst(self) -> Part:
        return min(self.parts, key=lambda p: p.margin + p.tolerance)

    @property
    def margin(self) -> float:
        return self.worst.margin

    @property
    def tolerance(self) -> float:
        return self.worst.tolerance

    @property
    def samples(self) -> int:
        return sum(p.samples for p in self.parts)

    def summary(self) -> str:
        flag = "PASS" if self.passed else "FAIL"
        return f"{flag} {self.name}: worst part {self.worst.name} margin {self.margin:.3e} (tol {self.tolerance:.0e})"


def with_tolerances(report: VerificationReport, overrides: dict[str, float]) -> VerificationReport:
    """Copy of ``report`` with part tolerances replaced by ``overrides``.

    Keys are ``"check.part"`` or a bare ``"part"`` matching any check.
    """
    parts = []
    for p in report.parts:
        tol = overrides.get(f"{report.name}.{p.name}", overrides.get(p.name, p.tolerance))
        parts.append(Part(p.name, p.margin, tol, p.samples))
    return VerificationReport(report.name, parts, report.parameters, report.details)


def part_names(reports) -> set[str]:
    out = set()
    for r in reports:
        for p in r.parts:
            out.update((p.name, f"{r.name}.{p.name}"))
    return out


@dataclass
class CaseSample:
    """One configuration of the boundary case analysis.

    ``a = d0(z)``, ``b = dv(w)``, ``phi`` the angle of ``z`` from ``0 v_1``,
    ``theta1``/``theta2`` the angles of ``w_1``/``w_2`` (clockwise from
    ``v_1 -> v_2``), ``x = delta(z, v_1)`` and ``alpha`` the angle at ``v_1``
    on the edge case.
    """

    a: float = math.nan
    b: float = math.nan
    phi: float = math.nan
    theta1: float = math.nan
    theta2: float = math.nan
    x: float = math.nan
    alpha: float = math.nan


def _rng(seed):
    return np.random.default_rng(DEFAULT_SEED if seed is None else seed)


def _params_dict(params: SurfaceParams, **extra) -> dict:
    return {"genus": params.genus, **extra}


# ---------------------------------------------------------------------------
# sampling helpers


def random_polygon_points(params: SurfaceParams, n: int, rng) -> np.ndarray:
    """Uniform (Euclidean) rejection samples from the closed fundamental polygon."""
    out = []
    while len(out) < n:
        r = params.R_prime * math.sqrt(rng.uniform())
        z = r * cmath.exp(2j * math.pi * rng.uniform())
        if in_closed_polygon(params, z):
            out.append(z)
    return np.array(out)


def random_triangle_points(params: SurfaceParams, n: int, rng) -> np.ndarray:
    """Points of ``T`` in polar coordinates about 0."""
    lo = cmath.phase(params.vertex(1))
    out = np.empty(n, dtype=complex)
    for i in range(n):
        psi = lo + params.sector_angle * rng.uniform()
        out[i] = polar_point(edge_radius(params, psi) * rng.uniform(), psi)
    return out


def random_near_vertex(params: SurfaceParams, n: int, rng) -> np.ndarray:
    """Points within ``s/2`` of ``v_1``, hence with ``dv <= s/2``."""
    v1 = params.vertex(1)
    return np.array([point_at(v1, 2 * math.pi * rng.uniform(), params.s / 2 * rng.uniform()) for _ in range(n)])


def random_disk_points(n: int, rng, radius: float = 0.99) -> np.ndarray:
    r = radius * np.sqrt(rng.uniform(size=n))
    return r * np.exp(2j * np.pi * rng.uniform(size=n))


def triangle_lattice(params: SurfaceParams, n: int) -> np.ndarray:
    """About ``n`` points of the closed triangle ``T`` on a polar lattice."""
    m = max(2, math.ceil(math.sqrt(n)))
    lo = cmath.phase(params.vertex(1))
    pts = []
    for psi in np.linspace(lo, lo + params.sector_angle, m):
        for frac in np.linspace(0.0, 1.0, m):
            pts.append(polar_point(edge_radius(params, psi) * frac, psi))
    return np.array(pts)


def vertex_disk_lattice(params: SurfaceParams, n: int) -> np.ndarray:
    """About ``n`` points within ``s/2`` of ``v_1`` on a polar lattice."""
    m = max(2, math.ceil(math.sqrt(n)))
    v1 = params.vertex(1)
    pts = []
    for r in np.linspace(0.0, params.s / 2, m):
        for ang in np.linspace(0.0, 2 * math.pi, m, endpoint=False):
            pts.append(point_at(v1, ang, r))
    return np.array(pts)


# ---------------------------------------------------------------------------
# Theorem 2: the pair ([0], [v]) is at distance R


def verify_theorem2(
    params: SurfaceParams, ball: TranslateBall, n_points: int = 1000, seed=None, tol: float = DISTANCE_TOL
) -> VerificationReport:
    value = quotient_distance(params, 0.0, params.vertex(1), ball)
    # an orbit point farther than 2R from 0 is farther than R from any point
    # of the polygon, so it cannot violate the Dirichlet condition there
    n = ball.prefix(2.0 * params.R)
    centers = ball.orbit(0.0)[1:n]
    pts = random_polygon_points(params, n_points, _rng(seed))
    slack = np.array([disk_distances(z, centers).min() - disk_distance(0.0, z) for z in pts])
    return VerificationReport(
        "theorem2",
        [
            Part("attainment", -abs(value - params.R), tol),
            Part("dirichlet", float(slack.min()), 1e-10, n_points),
        ],
        _params_dict(params, n_points=n_points, seed=seed, ball_cutoff=ball.cutoff),
        {"quotient_distance": value, "R": params.R, "dirichlet_failures": int((slack < -1e-10).sum())},
    )


# ---------------------------------------------------------------------------
# Prop. 2: reduction of an arbitrary pair


def sector_index(params: SurfaceParams, z: complex) -> int:
    """Index ``k`` of the triangle ``0 v_k v_{k+1}`` containing the polygon point ``z``."""
    if z == 0:
        return 1
    step = params.sector_angle
    return math.floor((cmath.phase(z) % (2 * math.pi)) / step + 0.5) % params.n_sides


def triangle_slack(params: SurfaceParams, z: complex) -> float:
    """Smallest signed distance-like slack of ``z`` against the three sides of ``T``."""
    tri = fundamental_triangle(params).vertices
    out = []
    for p, q, r in ((tri[0], tri[1], tri[2]), (tri[1], tri[2], tri[0]), (tri[2], tri[0], tri[1])):
        out.append(geodesic_side(p, q, z) * math.copysign(1.0, geodesic_side(p, q, r)))
    return min(out)


def prop2_quantities(params: SurfaceParams, z, w) -> tuple[float, float, float, float]:
    return d0(params, z), dv(params, z), d0(params, w), dv(params, w)


def reduce_pair(params: SurfaceParams, z, w) -> tuple[complex, complex, int]:
    """Map ``(z, w)`` to a pair meeting the three reduction conditions.

    Returns ``(z', w', case)`` with ``case`` the 1-based index of the smallest
    of ``d0(z), dv(z), d0(w), dv(w)`` (first one on ties).
    """
    quantities = prop2_quantities(params, z, w)
    case = int(np.argmin(quantities)) + 1
    phi = dual_isometry(params, 1)
    if case == 1:
        z2, w2 = phi(w), phi(z)
    elif case == 2:
        z2, w2 = w, z
    elif case == 3:
        z2, w2 = phi(z), phi(w)
    else:
        z2, w2 = complex(z), complex(w)
    z2 = reduce_point(params, z2)[0]
    w2 = reduce_point(params, w2)[0]
    turn = rotation_isometry((1 - sector_index(params, z2)) * params.sector_angle)
    return turn(z2), reduce_point(params, turn(w2))[0], case


def verify_prop2_reduction(
    params: SurfaceParams, ball: TranslateBall, z, w, tol: float = DISTANCE_TOL
) -> tuple[complex, complex, VerificationReport]:
    z2, w2, case = reduce_pair(params, z, w)
    before = quotient_distance(params, z, w, ball)
    after = quotient_distance(params, z2, w2, ball)
    report = VerificationReport(
        "prop2",
        [
            Part("z_in_T", triangle_slack(params, z2), 1e-12),
            Part("d0_z_ge_dv_w", d0(params, z2) - dv(params, w2), tol),
            Part("dv_w_le_half_side", params.s / 2 - dv(params, w2), tol),
            Part("distance_preserved", -abs(after - before), tol),
            Part("min_le_half_side", params.s / 2 - min(prop2_quantities(params, z, w)), tol),
        ],
        _params_dict(params),
        {"case": case, "distance": before},
    )
    return z2, w2, report


def prop2_suite(params: SurfaceParams, ball: TranslateBall, n_pairs: int = 1000, seed=None) -> VerificationReport:
    rng = _rng(seed)
    zs, ws = random_disk_points(n_pairs, rng), random_disk_points(n_pairs, rng)
    worst: dict[str, Part] = {}
    cases = [0, 0, 0, 0]
    for z, w in zip(zs, ws):
        _, _, rep = verify_prop2_reduction(params, ball, z, w)
        cases[rep.details["case"] - 1] += 1
        for part in rep.parts:
            if part.name not in worst or part.margin < worst[part.name].margin:
                worst[part.name] = part
    parts = [Part(p.name, p.margin, p.tolerance, n_pairs) for p in worst.values()]
    return VerificationReport("prop2", parts, _params_dict(params, n_pairs=n_pairs, seed=seed), {"cases": cases})


# ---------------------------------------------------------------------------
# the domain Omega_w and Theorems 3 and 4


@dataclass
class OmegaDomain:
    """Points ``z`` of ``T`` with ``d0(z) >= b`` where ``b = dv(w) <= s/2``."""

    params: SurfaceParams
    w: complex
    b: float
    reps: DualRepresentatives

    @classmethod
    def build(cls, params: SurfaceParams, w, ball: TranslateBall) -> OmegaDomain:
        reps = dual_representatives(params, w, ball)
        return cls(params, complex(w), dv(params, w), reps)

    @property
    def w1(self) -> complex:
        return self.reps.w1

    @property
    def w2(self) -> complex:
        return self.reps.w2

    @property
    def thetas(self) -> tuple[float, float]:
        """Angles of ``w_1`` at ``v_1`` and ``w_2`` at ``v_2``."""
        return dual_angles(self.params, self.reps)

    @property
    def angles(self) -> tuple[float, float]:
        lo = cmath.phase(self.params.vertex(1))
        return lo, lo + self.params.sector_angle

    def objective(self, z) -> np.ndarray:
        """``min(delta(z, w_1), delta(z, w_2))``, vectorised over ``z``."""
        z = np.atleast_1d(np.asarray(z, dtype=complex))
        return np.minimum(_dist_many(z, self.w1), _dist_many(z, self.w2))

    def pieces(self) -> dict:
        """Boundary pieces as maps from ``t`` in [0, 1] to points."""
        p = self.params
        lo, hi = self.angles
        b, R = self.b, p.R
        edge = GeodesicSegment(p.vertex(1), p.vertex(2))
        return {
            "radial_v1": lambda t: polar_point(b + t * (R - b), lo),
            "radial_v2": lambda t: polar_point(b + t * (R - b), hi),
            "arc": lambda t: polar_point(b, lo + t * (hi - lo)),
            "edge": edge.point,
        }

    def boundary(self, n: int) -> dict[str, np.ndarray]:
        ts = np.linspace(0.0, 1.0, n)
        return {name: np.array([f(t) for t in ts]) for name, f in self.pieces().items()}

    def interior(self, n: int) -> np.ndarray:
        """``n x n`` polar lattice strictly inside the domain."""
        lo, hi = self.angles
        pts = []
        for i in range(n):
            psi = lo + (hi - lo) * (i + 0.5) / n
            top = edge_radius(self.params, psi)
            for j in range(n):
                pts.append(polar_point(self.b + (top - self.b) * (j + 0.5) / n, psi))
        return np.array(pts)

    def boundary_max(self, n: int) -> tuple[float, complex]:
        """Maximum of the objective on the boundary, refined between samples."""
        best, arg = -math.inf, 0j
        ts = np.linspace(0.0, 1.0, n)
        for f in self.pieces().values():
            vals = np.array([self.objective(f(t))[0] for t in ts])
            i = int(np.argmax(vals))
            if vals[i] > best:
                best, arg = float(vals[i]), f(ts[i])
            lo, hi = ts[max(i - 1, 0)], ts[min(i + 1, n - 1)]
            if hi > lo:
                res = minimize_scalar(lambda t: -self.objective(f(t))[0], bounds=(lo, hi), method="bounded",
                                      options={"xatol": 1e-12})
                if -res.fun > best:
                    best, arg = float(-res.fun), f(res.x)
        return best, arg


def _dist_many(z: np.ndarray, w: complex) -> np.ndarray:
    num = 2.0 * np.abs(z - w) ** 2
    den = (1.0 - np.abs(z) ** 2) * (1.0 - abs(w) ** 2)
    y = np.maximum(num / den, 0.0)
    return np.log1p(y + np.sqrt(y * (y + 2.0)))


def verify_theorem3(
    params: SurfaceParams, ball: TranslateBall, w, grid_n: int = 50, tol: float = DISTANCE_TOL
) -> VerificationReport:
    dom = OmegaDomain.build(params, w, ball)
    inner = dom.objective(dom.interior(grid_n))
    i = int(np.argmax(inner))
    bmax, barg = dom.boundary_max(grid_n)
    return VerificationReport(
        "theorem3",
        [Part("interior_le_boundary", bmax - float(inner[i]), tol, grid_n * grid_n + 4 * grid_n)],
        _params_dict(params, grid_n=grid_n),
        {"b": dom.b, "interior_max": float(inner[i]), "boundary_max": bmax,
         "interior_argmax": complex(dom.interior(grid_n)[i]), "boundary_argmax": barg},
    )


def verify_theorem4_boundary(
    params: SurfaceParams, ball: TranslateBall, w, samples_n: int = 200, tol: float = DISTANCE_TOL
) -> VerificationReport:
    dom = OmegaDomain.build(params, w, ball)
    pieces = dom.boundary(samples_n)
    worst = max(float(dom.objective(pts).max()) for pts in pieces.values())
    # on the ray 0 v_i: delta(z, w_i) <= delta(z, v_i) + delta(v_i, w_i) = (R - a) + b
    case_i = []
    for name, wi in (("radial_v1", dom.w1), ("radial_v2", dom.w2)):
        pts = pieces[name]
        a = _dist_many(pts, 0j)
        case_i.append(float(((params.R - (a - dom.b)) - _dist_many(pts, wi)).min()))
    every = np.concatenate(list(pieces.values()))
    in_domain = min(
        min(triangle_slack(params, z) for z in every),
        float((_dist_many(every, 0j) - dom.b).min()),
    )
    return VerificationReport(
        "theorem4",
        [
            Part("min_distance_le_R", params.R - worst, tol, 4 * samples_n),
            Part("case_i_chain", min(case_i), tol, 2 * samples_n),
            Part("samples_in_domain", in_domain, tol, 4 * samples_n),
        ],
        _params_dict(params, samples_n=samples_n),
        {"b": dom.b, "boundary_max": worst, "thetas": dom.thetas},
    )


def theorem3_suite(params, ball, n_w: int = 100, grid_n: int = 50, seed=None) -> VerificationReport:
    ws = random_near_vertex(params, n_w, _rng(seed))
    reports = [verify_theorem3(params, ball, w, grid_n) for w in ws]
    worst = min(reports, key=lambda r: r.margin)
    part = worst.parts[0]
    return VerificationReport(
        "theorem3",
        [Part(part.name, part.margin, part.tolerance, sum(r.samples for r in reports))],
        _params_dict(params, n_w=n_w, grid_n=grid_n, seed=seed),
        {"failures": sum(not r.passed for r in reports), "worst_b": worst.details["b"]},
    )


def theorem4_suite(params, ball, n_w: int = 200, samples_n: int = 200, seed=None) -> VerificationReport:
    ws = random_near_vertex(params, n_w, _rng(seed))
    reports = [verify_theorem4_boundary(params, ball, w, samples_n) for w in ws]
    parts = []
    for k, name in enumerate(("min_distance_le_R", "case_i_chain", "samples_in_domain")):
        worst = min((r.parts[k] for r in reports), key=lambda p: p.margin)
        parts.append(Part(name, worst.margin, worst.tolerance, sum(r.parts[k].samples for r in reports)))
    return VerificationReport(
        "theorem4", parts, _params_dict(params, n_w=n_w, samples_n=samples_n, seed=seed),
        {"violations": sum(not r.passed for r in reports)},
    )


# ---------------------------------------------------------------------------
# Case II: the circular arc


def case2_expression(params: SurfaceParams, a, phi, theta1):
    """Left-hand side of the arc-case inequality; positive iff ``delta(z, w_1) > R``."""
    q = math.pi / (4 * params.genus)
    Rp = params.R_prime
    a, phi, theta1 = np.asarray(a, float), np.asarray(phi, float), np.asarray(theta1, float)
    return (
        (1.0 + Rp**2)
        - 2.0 * Rp / np.tanh(a) * (np.cos(theta1 + q) + np.cos(phi))
        + np.cos(theta1 + phi + q)
        + Rp**2 * np.cos(theta1 - phi + q)
    )


def case2_sign(params: SurfaceParams, sample: CaseSample) -> float:
    if not sample.a > 0:
        raise DomainError("the arc case needs a > 0 (coth a is singular at 0)")
    return float(case2_expression(params, sample.a, sample.phi, sample.theta1))


def case2_configuration(params: SurfaceParams, a: float, phi: float, theta1: float, b: float | None = None):
    """Place ``z``, ``w_1``, ``w_2`` for the arc case.

    ``z`` is at distance ``a`` from 0 at angle ``phi`` past ``0 v_1``; ``w_1``
    is at distance ``b`` (default ``a``) from ``v_1``, ``theta1`` clockwise
    from ``v_1 -> v_2``; ``w_2`` makes the same angle at ``v_2`` with the
    continuation of ``v_1 v_2``.
    """
    b = a if b is None else b
    v1, v2 = params.vertex(1), params.vertex(2)
    z = polar_point(a, cmath.phase(v1) + phi)
    w1 = point_at(v1, direction(v1, v2) - theta1, b)
    w2 = point_at(v2, direction(v2, v1) + math.pi - theta1, b)
    return z, w1, w2


def case2_sign_agreement(
    params: SurfaceParams, n_samples: int = 10_000, seed=None, dead_band: float = DEAD_BAND
) -> VerificationReport:
    rng = _rng(seed)
    mismatches = in_band = 0
    worst_gap = math.inf
    for _ in range(n_samples):
        a = params.s / 2 * (1.0 - rng.uniform())  # (0, s/2]
        phi = params.sector_angle * rng.uniform()
        theta1 = math.pi * (2.0 * rng.uniform() - 1.0)
        z, w1, _ = case2_configuration(params, a, phi, theta1)
        gap = disk_distance(z, w1) - params.R
        sign = case2_sign(params, CaseSample(a=a, b=a, phi=phi, theta1=theta1))
        if abs(gap) < dead_band:
            in_band += 1
            continue
        if np.sign(gap) != np.sign(sign):
            mismatches += 1
            worst_gap = min(worst_gap, -abs(gap))
    return VerificationReport(
        "case2_sign",
        [Part("out_of_band_mismatches", -float(mismatches), 0.0, n_samples)],
        _params_dict(params, n_samples=n_samples, seed=seed, dead_band=dead_band),
        {"in_band": in_band, "agreement": 1.0 - mismatches / n_samples},
    )


def case2_bounds(params: SurfaceParams, phi):
    """The four bracketing functions at ``a = s/2``.

    Returns ``(lo1, hi1, lo2, hi2)``: ``delta(z, w_1) > R`` exactly when
    ``tan(alpha/2)`` lies outside ``[lo1, hi1]``, and ``delta(z, w_2) > R``
    exactly when it lies strictly between ``lo2`` and ``hi2``, where
    ``alpha = theta1 - phi + pi/4g``.
    """
    phi = np.asarray(phi, float)
    ratio_hi, ratio_lo = params.R_prime / params.s_prime, params.R_prime * params.s_prime
    rest = params.sector_angle - phi
    lo1 = (np.cos(phi) - ratio_hi) / np.sin(phi)
    hi1 = (np.cos(phi) - ratio_lo) / np.sin(phi)
    lo2 = np.sin(rest) / (np.cos(rest) - ratio_hi)
    hi2 = np.sin(rest) / (np.cos(rest) - ratio_lo)
    return lo1, hi1, lo2, hi2


def case2_disjointness(
    params: SurfaceParams, phi_grid_n: int = 10_000, n_samples: int = 10_000, seed=None, tol: float = DISTANCE_TOL
) -> VerificationReport:
    """The two solution sets in ``tan(alpha/2)`` never meet.

    Disjointness is ``lo1 <= lo2`` and ``hi1 >= hi2`` for every ``phi``; both
    margins touch zero only at ``phi = pi/4g``. Rejection samples check the
    sets directly and against the geometric distances.
    """
    eps = 1e-8
    phi = np.linspace(eps, params.sector_angle - eps, phi_grid_n)
    lo1, hi1, lo2, hi2 = case2_bounds(params, phi)
    lower_margin = lo2 - lo1
    upper_margin = hi1 - hi2

    rng = _rng(seed)
    both = geometry_mismatch = 0
    a = params.s / 2
    for _ in range(n_samples):
        ph = params.sector_angle * rng.uniform()
        th = math.pi * (2.0 * rng.uniform() - 1.0)
        t = math.tan((th - ph + math.pi / (4 * params.genus)) / 2.0)
        l1, h1, l2, h2 = (float(v) for v in case2_bounds(params, ph))
        in1 = t < l1 or t > h1
        in2 = l2 < t < h2
        both += in1 and in2
        z, w1, w2 = case2_configuration(params, a, ph, th)
        g1, g2 = disk_distance(z, w1) - params.R, disk_distance(z, w2) - params.R
        if abs(g1) > DEAD_BAND and (g1 > 0) != in1:
            geometry_mismatch += 1
        if abs(g2) > DEAD_BAND and (g2 > 0) != in2:
            geometry_mismatch += 1

    # the endpoints of the sets move monotonically in a, so a = s/2 is the worst case
    a_grid = np.linspace(1e-6, params.s / 2, 2000)
    lower_end = params.R_prime * np.tanh(a_grid / 2)
    upper_end = params.R_prime / np.tanh(a_grid / 2)
    monotone = min(float(np.diff(lower_end).min()), float(-np.diff(upper_end).min()))

    return VerificationReport(
        "case2_disjointness",
        [
            Part("lower_endpoints", float(lower_margin.min()), tol, phi_grid_n),
            Part("upper_endpoints", float(upper_margin.min()), tol, phi_grid_n),
            Part("rejection_overlaps", -float(both), 0.0, n_samples),
            Part("sets_match_geometry", -float(geometry_mismatch), 0.0, n_samples),
            Part("endpoint_monotonicity", monotone, 0.0, len(a_grid)),
        ],
        _params_dict(params, phi_grid_n=phi_grid_n, n_samples=n_samples, seed=seed),
        {
            "lower_touch_phi": float(phi[np.argmin(lower_margin)]),
            "upper_touch_phi": float(phi[np.argmin(upper_margin)]),
        },
    )


# ---------------------------------------------------------------------------
# Case III: the polygon edge


def case3_feasibility_gap(params: SurfaceParams, b, x):
    """``lower - upper`` for the two bounds on ``cos(alpha)``; ``>= 0`` means no solution."""
    b, x = np.asarray(b, float), np.asarray(x, float)
    ch_r, s = math.cosh(params.R), params.s
    upper = (np.cosh(b) * np.cosh(x) - ch_r) / (np.sinh(b) * np.sinh(x))
    lower = (ch_r - np.cosh(b) * np.cosh(s - x)) / (np.sinh(b) * np.sinh(s - x))
    return np.maximum(lower, -1.0) - np.minimum(upper, 1.0)


def case3_margin(
    params: SurfaceParams, x_grid_n: int = 10_001, n_samples: int = 1000, seed=None
) -> VerificationReport:
    rng = _rng(seed)
    s = params.s

    # law of cosines against the disk metric on constructed triangles
    law_err = 0.0
    for _ in range(n_samples):
        b, c, alpha = 3.0 * rng.uniform(), 3.0 * rng.uniform(), math.pi * rng.uniform()
        direct = disk_distance(polar_point(b, 0.0), polar_point(c, alpha))
        law_err = max(law_err, abs(direct - cosine_law_side(b, c, alpha)))

    # min over x of cosh(s/2) cosh(x - s/2) is cosh(s/2), at x = s/2
    n = x_grid_n + (x_grid_n + 1) % 2  # odd, so s/2 is a node
    x = np.linspace(0.0, s, n)
    profile = math.cosh(s / 2) * np.cosh(x - s / 2)
    k = int(np.argmin(profile))
    argmin_err = abs(x[k] - s / 2)
    value_err = abs(profile[k] - math.cosh(s / 2)) / math.cosh(s / 2)
    bs = np.concatenate([s / 2 * rng.uniform(size=n_samples), [s / 2]])
    dominance = profile[k] - np.cosh(bs)
    # reducing to the largest b is only valid because cosh is increasing there
    cosh_step = float(np.diff(np.cosh(np.linspace(0.0, s / 2, 2000))).min())
    extremal = abs(float(dominance[-1]))

    # the cos(alpha) window is empty for random (b, x), checked two ways
    b = s / 2 * (1.0 - rng.uniform(size=n_samples))
    xs = s * rng.uniform(size=n_samples)
    xs = np.clip(xs, 1e-9, s - 1e-9)
    gap = case3_feasibility_gap(params, b, xs)
    alpha = math.pi * rng.uniform(size=n_samples)
    both = 0
    for bi, xi, al in zip(b, xs, alpha):
        d1 = cosine_law_side(bi, xi, al)
        d2 = cosine_law_side(bi, s - xi, math.pi - al)
        both += d1 > params.R + DEAD_BAND and d2 > params.R + DEAD_BAND

    return VerificationReport(
        "case3_margin",
        [
            Part("cosine_law", -law_err, 1e-10, n_samples),
            Part("argmin_at_half_side", -argmin_err, 1e-12, n),
            Part("min_value", -value_err, 1e-12, n),
            Part("dominates_cosh_b", float(dominance.min()), 1e-10, len(bs)),
            Part("equality_at_extremal", -extremal, 1e-10),
            Part("cosh_b_monotone", cosh_step, 0.0, 2000),
            Part("window_empty", float(gap.min()), 1e-10, n_samples),
            Part("direct_both_exceed", -float(both), 0.0, n_samples),
        ],
        _params_dict(params, x_grid_n=n, n_samples=n_samples, seed=seed),
    )


# ---------------------------------------------------------------------------
# Theorem 1: the diameter


def diameter_estimate(
    params: SurfaceParams,
    ball: TranslateBall,
    grid_n: int = 100,
    n_random: int = 1000,
    seed=None,
    tol: float = DISTANCE_TOL,
):
    """Max-min search for the diameter.

    Candidates are the pair ``(0, v_1)``, a lattice of ``z`` in ``T`` crossed
    with a lattice of ``w`` near ``v_1`` (the reduced search space), and
    random unreduced pairs. Returns ``(estimate, (z, w), report)``.
    """
    ball.require(4.0 * params.R, "diameter estimate")
    best = quotient_distance(params, 0.0, params.vertex(1), ball)
    arg = (0j, params.vertex(1))
    count = 1

    zs = [reduce_point(params, z)[0] for z in triangle_lattice(params, grid_n)]
    ws = [reduce_point(params, w)[0] for w in vertex_disk_lattice(params, grid_n)]
    grid_max = -math.inf
    for z in zs:
        for w in ws:
            d = certified_minimum(ball, z, w)[0]
            count += 1
            if d > grid_max:
                grid_max, grid_arg = d, (z, w)
    rng = _rng(seed)
    rz, rw = random_disk_points(n_random, rng), random_disk_points(n_random, rng)
    rand_max = -math.inf
    for z, w in zip(rz, rw):
        d = certified_minimum(ball, reduce_point(params, z)[0], reduce_point(params, w)[0])[0]
        count += 1
        if d > rand_max:
            rand_max, rand_arg = d, (complex(z), complex(w))
    sampled = max(grid_max, rand_max)
    estimate = best
    if grid_max > estimate:
        estimate, arg = grid_max, grid_arg
    if rand_max > estimate:
        estimate, arg = rand_max, rand_arg
    report = VerificationReport(
        "diameter",
        [
            Part("estimate_equals_R", -abs(estimate - params.R), tol, count),
            Part("samples_le_R", params.R - sampled, tol, count - 1),
        ],
        _params_dict(params, grid_n=grid_n, n_random=n_random, seed=seed, ball_cutoff=ball.cutoff),
        {"estimate": estimate, "R": params.R, "grid_max": grid_max, "random_max": rand_max,
         "argmax": [arg[0], arg[1]]},
    )
    return estimate, arg, report


def literature_bounds(params: SurfaceParams, systole: float, diameter: float) -> VerificationReport:
    """Margins of the five general diameter bounds (positive = bound holds)."""
    if not (systole > 0 and diameter > 0):
        raise DomainError("systole and diameter must be positive")
    A, ell, D, g = params.area, systole, diameter, params.genus
    parts = [
        Part("chang_lower", 2 * ell * math.sinh(D) - A, 0.0),
        Part("chang_upper", A - 2 * math.sinh(ell / 4) * D, 0.0),
        Part("balacheff", 3 * math.cosh(D) - 1 - 4 * math.cosh(ell / 2), 0.0),
        Part("area_lower", math.cosh(D) - (A / (2 * math.pi) + 1), 0.0),
        Part("genus_lower", math.cosh(D) - 1 / math.sqrt(3) / math.tan(math.pi / (6 * (2 * g - 1))), 0.0),
    ]
    return VerificationReport(
        "bounds", parts, _params_dict(params), {"systole": ell, "diameter": D, "area": A}
    )


# ---------------------------------------------------------------------------
# Prop. 1: symmetries


def verify_symmetries(
    params: SurfaceParams, ball: TranslateBall, n_pairs: int = 100, seed=None, tol: float = DISTANCE_TOL
) -> VerificationReport:
    theta = params.rotation
    theta_inv = theta.inverse()
    gens = params.side_pairings
    n = params.n_sides
    # generator i goes to i + 1; past 2g - 1 the index wraps onto the inverses
    conj_err = max((theta @ gens[i] @ theta_inv).distance_to(gens[(i + 1) % n]) for i in range(2 * params.genus))

    ball.require(4.0 * params.R, "symmetry check")
    duals = [dual_isometry(params, k) for k in range(n)]
    missing = 0
    found_err = 0.0
    for phi in duals:
        phi_inv = phi.inverse()
        for t in gens:
            target = phi @ t @ phi_inv
            idx = ball.find(target, MEMBERSHIP_TOL)
            if idx is None:
                missing += 1
            else:
                found_err = max(found_err, ball.isometry(idx).distance_to(target))

    rng = _rng(seed)
    zs, ws = random_disk_points(n_pairs, rng, 0.95), random_disk_points(n_pairs, rng, 0.95)
    rot_err = dual_err = 0.0
    for i, (z, w) in enumerate(zip(zs, ws)):
        base = quotient_distance(params, z, w, ball)
        rot_err = max(rot_err, abs(quotient_distance(params, theta(z), theta(w), ball) - base))
        phi = duals[i % n]
        dual_err = max(dual_err, abs(quotient_distance(params, phi(z), phi(w), ball) - base))

    return VerificationReport(
        "symmetries",
        [
            Part("rotation_conjugation", -conj_err, IDENTITY_TOL, 2 * params.genus),
            Part("dual_conjugates_in_group", -float(missing), 0.0, n * n),
            Part("dual_conjugate_match", -found_err, MEMBERSHIP_TOL, n * n),
            Part("rotation_invariance", -rot_err, tol, n_pairs),
            Part("dual_invariance", -dual_err, tol, n_pairs),
        ],
        _params_dict(params, n_pairs=n_pairs, seed=seed),
    )


# ---------------------------------------------------------------------------
# suite


CHECKS = (
    "theorem2",
    "prop2",
    "theorem3",
    "theorem4",
    "case2_sign",
    "case2_disjointness",
    "case3_margin",
    "diameter",
    "systole",
    "bounds",
    "symmetries",
)


@dataclass
class SuiteResult:
    reports: list[VerificationReport]
    seconds: list[float]
    systole: float | None = None

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.reports)


def _systole_report(params, ball, systole_value):
    wider = enumerate_ball(params, 3.0 * params.s, max(len(ball), 1_000_000))
    stable = systole(params, wider)
    return VerificationReport(
        "systole",
        [
            Part("positive", systole_value, 0.0),
            Part("stable_under_cutoff", -abs(stable - systole_value), DISTANCE_TOL),
        ],
        _params_dict(params),
        {"systole": systole_value, "systole_3s": stable},
    )


def run_suite(
    params: SurfaceParams,
    ball: TranslateBall,
    checks=None,
    grid_n: int = 100,
    samples_n: int = 200,
    seed=None,
) -> SuiteResult:
    """Run the named checks (all by default) in a fixed order."""
    names = CHECKS if not checks else tuple(checks)
    unknown = [n for n in names if n not in CHECKS]
    if unknown:
        raise DomainError(f"unknown check(s): {', '.join(unknown)}")
    seed = DEFAULT_SEED if seed is None else seed
    ell = systole(params, ball)
    runners = {
        "theorem2": lambda: verify_theorem2(params, ball, seed=seed),
        "prop2": lambda: prop2_suite(params, ball, 1000, seed),
        "theorem3": lambda: theorem3_suite(params, ball, 100, min(grid_n, 50), seed),
        "theorem4": lambda: theorem4_suite(params, ball, samples_n, samples_n, seed),
        "case2_sign": lambda: case2_sign_agreement(params, 10_000, seed),
        "case2_disjointness": lambda: case2_disjointness(params, 10_000, 10_000, seed),
        "case3_margin": lambda: case3_margin(params, 10_001, 1000, seed),
        "diameter": lambda: diameter_estimate(params, ball, grid_n, 1000, seed)[2],
        "systole": lambda: _systole_report(params, ball, ell),
        "bounds": lambda: literature_bounds(params, ell, params.R),
        "symmetries": lambda: verify_symmetries(params, ball, 100, seed),
    }
    reports, seconds = [], []
    for name in CHECKS:
        if name not in names:
            continue
        start = time.perf_counter()
        reports.append(runners[name]())
        seconds.append(time.perf_counter() - start)
    return SuiteResult(reports, seconds, ell)
