"""Poincare disk model: points, distances, isometries and trigonometry.

Isometries of the disk are the matrices ``[[a, conj(c)], [c, conj(a)]]`` with
``|a|**2 - |c|**2 = 1`` acting by ``z -> (a z + conj(c)) / (c z + conj(a))``.
A matrix and its negation act identically, so every :class:`Isometry` stores
one canonical sign representative.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError

ALGEBRAIC_TOL = 1e-12
GEOMETRIC_TOL = 1e-10

# relative size below which a real/imaginary part is treated as a sign tie
_SIGN_TIE = 1e-14


def acosh1p(y):
    """Return ``arccosh(1 + y)`` for ``y >= 0`` without cancellation.

    Works on scalars and numpy arrays. The log form keeps full relative
    precision both for tiny ``y`` (nearby points) and for huge ``y``.
    """
    if isinstance(y, np.ndarray):
        y = np.maximum(y, 0.0)
        return np.log1p(y + np.sqrt(y * (y + 2.0)))
    y = max(float(y), 0.0)
    return math.log1p(y + math.sqrt(y * (y + 2.0)))


def acosh(x):
    """Log-based arccosh for arguments ``>= 1``."""
    return acosh1p(x - 1.0)


class DiskPoint(complex):
    """A point of the open unit disk.

    This is a :class:`complex` whose modulus is checked on construction, so it
    can be used anywhere a complex number is expected.
    """

    def __new__(cls, real=0.0, imag=0.0):
        z = complex(real, imag) if not isinstance(real, complex) else real + 1j * imag
        if not abs(z) < 1.0 or not cmath.isfinite(z):
            raise DomainError(f"{z!r} is not inside the open unit disk")
        return super().__new__(cls, z.real, z.imag)

    @property
    def coordinate(self) -> complex:
        return complex(self)

    def __repr__(self) -> str:
        return f"DiskPoint({complex(self)!r})"


def _check_interior(z) -> complex:
    z = complex(z)
    if not abs(z) < 1.0:
        raise DomainError(f"{z!r} is not inside the open unit disk")
    return z


def disk_distance(z, w) -> float:
    """Hyperbolic distance between two points of the disk."""
    z, w = _check_interior(z), _check_interior(w)
    num = 2.0 * abs(z - w) ** 2
    den = (1.0 - abs(z) ** 2) * (1.0 - abs(w) ** 2)
    return acosh1p(num / den)


def disk_distances(z: complex, w: np.ndarray) -> np.ndarray:
    """Vectorised :func:`disk_distance` from one point to an array of points."""
    w = np.asarray(w, dtype=complex)
    num = 2.0 * np.abs(z - w) ** 2
    den = (1.0 - abs(z) ** 2) * (1.0 - np.abs(w) ** 2)
    return acosh1p(num / den)


def orbit_distances(z: complex, w: complex, a: np.ndarray, c: np.ndarray) -> np.ndarray:
    """Distances ``delta(z, f(w))`` for every isometry ``f = (a, c)`` in the arrays.

    Uses ``1 - |f(w)|**2 = (1 - |w|**2) / |c w + conj(a)|**2`` so that far-away
    images lose no precision to cancellation.
    """
    den_fw = c * w + np.conj(a)
    num_fw = a * w + np.conj(c)
    diff = z * den_fw - num_fw
    y = 2.0 * np.abs(diff) ** 2 / ((1.0 - abs(z) ** 2) * (1.0 - abs(w) ** 2))
    return acosh1p(y)


def apply_arrays(a: np.ndarray, c: np.ndarray, z) -> np.ndarray:
    """Apply every isometry ``(a, c)`` of the arrays to ``z``."""
    return (a * z + np.conj(c)) / (c * z + np.conj(a))


@dataclass(frozen=True)
class Isometry:
    """Orientation-preserving isometry of the disk, unit determinant, canonical sign."""

    a: complex
    c: complex

    def __post_init__(self):
        a, c = complex(self.a), complex(self.c)
        det = abs(a) ** 2 - abs(c) ** 2
        if not det > 0:
            raise DomainError("matrix does not preserve the unit disk")
        if abs(det - 1.0) > ALGEBRAIC_TOL * max(1.0, abs(a) ** 2):
            scale = math.sqrt(det)
            a, c = a / scale, c / scale
        if _negate(a, c):
            a, c = -a, -c
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "c", c)

    @classmethod
    def identity(cls) -> Isometry:
        return cls(1.0, 0.0)

    @classmethod
    def from_matrix(cls, m) -> Isometry:
        """Build from a 2x2 matrix ``[[a, b], [c, d]]`` of the disk-preserving form."""
        m = np.asarray(m, dtype=complex)
        a, b, c, d = m[0, 0], m[0, 1], m[1, 0], m[1, 1]
        scale = max(abs(a), abs(b), abs(c), abs(d), 1.0)
        if abs(d - np.conj(a)) > 1e-9 * scale or abs(b - np.conj(c)) > 1e-9 * scale:
            raise DomainError("matrix is not of the form [[a, conj(c)], [c, conj(a)]]")
        return cls(complex(a), complex(c))

    def matrix(self) -> np.ndarray:
        return np.array([[self.a, self.c.conjugate()], [self.c, self.a.conjugate()]])

    @property
    def determinant(self) -> float:
        return abs(self.a) ** 2 - abs(self.c) ** 2

    @property
    def trace(self) -> float:
        # a + conj(a) is real for this family
        return 2.0 * self.a.real

    def __call__(self, z) -> complex:
        return apply_isometry(self, z)

    def __matmul__(self, other: Isometry) -> Isometry:
        return compose(self, other)

    def inverse(self) -> Isometry:
        return invert(self)

    def displacement(self) -> float:
        """Distance the origin is moved, ``delta(0, f(0))``."""
        return 2.0 * acosh(max(abs(self.a), 1.0))

    def translation_length(self) -> float:
        """``2 arccosh(|trace| / 2)``; zero for elliptic or parabolic elements."""
        half = abs(self.a.real)
        return 2.0 * acosh(half) if half > 1.0 else 0.0

    def distance_to(self, other: Isometry) -> float:
        """Max-norm distance between matrices, minimised over the sign ambiguity."""
        plus = max(abs(self.a - other.a), abs(self.c - other.c))
        minus = max(abs(self.a + other.a), abs(self.c + other.c))
        return min(plus, minus)

    def is_close(self, other: Isometry, tol: float = ALGEBRAIC_TOL) -> bool:
        return self.distance_to(other) <= tol


def _negate(a: complex, c: complex) -> bool:
    eps = _SIGN_TIE * max(1.0, abs(a))
    if abs(a.real) > eps:
        return a.real < 0
    if abs(a.imag) > eps:
        return a.imag < 0
    return c.real < 0


def apply_isometry(f: Isometry, z) -> complex:
    """Fractional linear action ``(a z + conj(c)) / (c z + conj(a))``."""
    z = complex(z)
    return (f.a * z + f.c.conjugate()) / (f.c * z + f.a.conjugate())


def compose(f: Isometry, g: Isometry) -> Isometry:
    """Matrix product ``f g`` (apply ``g`` first)."""
    a = f.a * g.a + f.c.conjugate() * g.c
    c = f.c * g.a + f.a.conjugate() * g.c
    return Isometry(a, c)


def invert(f: Isometry) -> Isometry:
    # inverse of [[a, conj c], [c, conj a]] with unit determinant
    return Isometry(f.a.conjugate(), -f.c)


def rotation_isometry(angle: float) -> Isometry:
    """Counterclockwise rotation about the origin by ``angle`` radians."""
    return Isometry(cmath.exp(0.5j * angle), 0.0)


def translation_to_origin(p) -> Isometry:
    """The hyperbolic translation sending ``p`` to 0 along the geodesic through both.

    Its derivative at ``p`` is a positive real, so tangent directions at ``p``
    are preserved.
    """
    p = _check_interior(p)
    return Isometry(1.0, -p.conjugate())


def half_turn(p) -> Isometry:
    """Rotation by pi about the point ``p``."""
    to_origin = translation_to_origin(p)
    return compose(invert(to_origin), compose(rotation_isometry(math.pi), to_origin))


def direction(p, q) -> float:
    """Angle of the tangent at ``p`` of the geodesic from ``p`` towards ``q``."""
    p, q = complex(p), complex(q)
    return cmath.phase((q - p) / (1.0 - p.conjugate() * q))


def point_at(p, angle: float, dist: float) -> complex:
    """The point at hyperbolic distance ``dist`` from ``p`` in tangent direction ``angle``."""
    p = complex(p)
    u = math.tanh(dist / 2.0) * cmath.exp(1j * angle)
    return (u + p) / (1.0 + p.conjugate() * u)


def polar_point(radius: float, angle: float) -> complex:
    """Point at hyperbolic distance ``radius`` from 0 in direction ``angle``."""
    return math.tanh(radius / 2.0) * cmath.exp(1j * angle)


def midpoint(p, q) -> complex:
    """Hyperbolic midpoint of the geodesic segment ``pq``."""
    return point_at(p, direction(p, q), disk_distance(p, q) / 2.0)


def angle_at(vertex, p, q) -> float:
    """Unsigned angle at ``vertex`` between the geodesics towards ``p`` and ``q``."""
    diff = direction(vertex, q) - direction(vertex, p)
    diff = math.remainder(diff, 2.0 * math.pi)
    return abs(diff)


@dataclass(frozen=True)
class GeodesicSegment:
    start: complex
    end: complex

    def __post_init__(self):
        object.__setattr__(self, "start", _check_interior(self.start))
        object.__setattr__(self, "end", _check_interior(self.end))

    @property
    def degenerate(self) -> bool:
        return self.start == self.end

    @property
    def length(self) -> float:
        return 0.0 if self.degenerate else disk_distance(self.start, self.end)

    def point(self, t: float) -> complex:
        """Point at fraction ``t`` of the hyperbolic length from ``start``."""
        if self.degenerate:
            return self.start
        return point_at(self.start, direction(self.start, self.end), t * self.length)

    def points(self, n: int) -> np.ndarray:
        """``n`` evenly spaced points including both endpoints."""
        ts = np.linspace(0.0, 1.0, n) if n > 1 else np.array([0.0])
        return np.array([self.point(t) for t in ts])


def cosine_law_side(b: float, c: float, alpha: float) -> float:
    """Side opposite the angle ``alpha`` in a triangle with adjacent sides ``b`` and ``c``."""
    if b < 0 or c < 0:
        raise DomainError("side lengths must be non-negative")
    # cosh b cosh c - sinh b sinh c cos(alpha) = cosh(b - c) + sinh b sinh c (1 - cos alpha)
    y = (math.cosh(b - c) - 1.0) + math.sinh(b) * math.sinh(c) * 2.0 * math.sin(alpha / 2.0) ** 2
    return acosh1p(y)
