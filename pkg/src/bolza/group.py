"""Finite pieces of the Fuchsian group of the surface.

Elements are grown breadth-first from the identity by right-multiplying with
side pairings, so an element's word is its parent's word plus one letter.
The group acts freely on the orbit of 0, so two elements coincide exactly
when they move 0 to the same point; deduplication works on that orbit point,
written in hyperboloid coordinates where distinct orbit points are at least
``2 sinh(s/2) > 4`` apart.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from functools import cached_property

import numpy as np
from scipy.spatial import cKDTree

from .errors import DomainError, InsufficientBallError, NonHyperbolicError, ResourceLimitError
from .hyperbolic import Isometry, acosh, acosh1p, apply_arrays
from .surface import SurfaceParams

DEFAULT_MAX_ELEMENTS = 1_000_000
CUTOFF_SLACK = 1e-9
# hyperboloid-coordinate radius under which two orbit points are the same
_MERGE_RADIUS = 0.5


def letter_to_index(letter: int, genus: int) -> int:
    """Signed letter ``+(k+1)`` / ``-(k+1)`` to side-pairing index ``k`` / ``k + 2g``."""
    if letter == 0 or abs(letter) > 2 * genus:
        raise DomainError(f"invalid letter {letter} for genus {genus}")
    return letter - 1 if letter > 0 else -letter - 1 + 2 * genus


def index_to_letter(index: int, genus: int) -> int:
    return index + 1 if index < 2 * genus else -(index - 2 * genus + 1)


def word_isometry(params: SurfaceParams, word) -> Isometry:
    """Ordered product of the letters of ``word``."""
    out = Isometry.identity()
    for letter in word:
        out = out @ params.side_pairings[letter_to_index(letter, params.genus)]
    return out


def free_reduce(word) -> list[int]:
    out: list[int] = []
    for letter in word:
        if out and out[-1] == -letter:
            out.pop()
        else:
            out.append(letter)
    return out


def _hyperboloid(a: np.ndarray, c: np.ndarray) -> np.ndarray:
    # image of 0 in hyperboloid coordinates: (|a|^2 + |c|^2, 2 a conj(c))
    ac = 2.0 * a * np.conj(c)
    return np.column_stack([np.abs(a) ** 2 + np.abs(c) ** 2, ac.real, ac.imag])


def _grid_keys(a: np.ndarray, c: np.ndarray) -> np.ndarray:
    return np.round(_hyperboloid(a, c)).astype(np.int64)


@dataclass(frozen=True)
class GroupElement:
    isometry: Isometry
    word: tuple[int, ...]
    basepoint_displacement: float


@dataclass(eq=False)
class TranslateBall:
    """Deduplicated group elements moving 0 by at most ``cutoff``, sorted by displacement.

    Element ``i`` is ``parent[i]`` times side pairing ``letter[i]``; index 0 is
    the identity.
    """

    params: SurfaceParams
    cutoff: float
    a: np.ndarray
    c: np.ndarray
    displacement: np.ndarray
    parent: np.ndarray
    letter: np.ndarray
    length: np.ndarray

    def __len__(self) -> int:
        return len(self.a)

    def __iter__(self):
        return (self.element(i) for i in range(len(self)))

    def isometry(self, i: int) -> Isometry:
        return Isometry(complex(self.a[i]), complex(self.c[i]))

    def word(self, i: int) -> tuple[int, ...]:
        out = []
        while i != 0:
            out.append(index_to_letter(int(self.letter[i]), self.params.genus))
            i = int(self.parent[i])
        return tuple(reversed(out))

    def element(self, i: int) -> GroupElement:
        return GroupElement(self.isometry(i), self.word(i), float(self.displacement[i]))

    def orbit(self, z) -> np.ndarray:
        """Images ``f(z)`` for every element, in ball order."""
        return apply_arrays(self.a, self.c, complex(z))

    def prefix(self, radius: float) -> int:
        """Number of leading elements with displacement ``<= radius``."""
        return int(np.searchsorted(self.displacement, radius + CUTOFF_SLACK, side="right"))

    @cached_property
    def _tree(self) -> cKDTree:
        return cKDTree(_hyperboloid(self.a, self.c))

    def find(self, f: Isometry, tol: float = 1e-8) -> int | None:
        """Index of the element equal to ``f`` (up to sign) within ``tol``, else None."""
        point = _hyperboloid(np.array([f.a]), np.array([f.c]))[0]
        dist, idx = self._tree.query(point, distance_upper_bound=_MERGE_RADIUS * 4)
        if not np.isfinite(dist):
            return None
        return int(idx) if self.isometry(int(idx)).is_close(f, tol) else None

    def require(self, radius: float, what: str) -> None:
        if self.cutoff < radius - CUTOFF_SLACK:
            raise InsufficientBallError(f"{what} needs ball cutoff >= {radius:.6f}, got {self.cutoff:.6f}")


def enumerate_ball(
    params: SurfaceParams,
    cutoff: float,
    max_elements: int = DEFAULT_MAX_ELEMENTS,
) -> TranslateBall:
    """Breadth-first enumeration of all elements with ``delta(0, f(0)) <= cutoff``.

    Words are only extended while their displacement stays within the cutoff.
    No extra margin is needed: every tile met by the segment from 0 to
    ``f(0)`` has its centre no farther from 0 than ``f(0)`` itself, so the
    pruned adjacency graph is connected.
    """
    if not cutoff > 0:
        raise DomainError("cutoff must be positive")
    gens = params.side_pairings
    ga = np.array([t.a for t in gens])
    gc = np.array([t.c for t in gens])
    limit = math.cosh((cutoff + CUTOFF_SLACK) / 2.0)

    a_parts = [np.array([1.0 + 0j])]
    c_parts = [np.array([0j])]
    parent_parts = [np.array([0], dtype=np.int64)]
    letter_parts = [np.array([-1], dtype=np.int64)]
    length_parts = [np.array([0], dtype=np.int64)]
    key_parts = [_grid_keys(a_parts[0], c_parts[0])]
    total, offset, depth = 1, 0, 0

    while len(a_parts[-1]):
        depth += 1
        fa, fc = a_parts[-1], c_parts[-1]
        new_a, new_c, new_parent, new_letter = [], [], [], []
        for k in range(len(gens)):
            # (a, c) * (A, C): a' = a A + conj(c) C, c' = c A + conj(a) C
            pa = fa * ga[k] + np.conj(fc) * gc[k]
            pc = fc * ga[k] + np.conj(fa) * gc[k]
            keep = np.abs(pa) <= limit
            new_a.append(pa[keep])
            new_c.append(pc[keep])
            new_parent.append(offset + np.flatnonzero(keep))
            new_letter.append(np.full(keep.sum(), k, dtype=np.int64))
        # order candidates by (parent, letter) so the first copy kept is deterministic
        cand_parent = np.concatenate(new_parent)
        cand_letter = np.concatenate(new_letter)
        order = np.lexsort((cand_letter, cand_parent))
        cand_a = np.concatenate(new_a)[order]
        cand_c = np.concatenate(new_c)[order]
        cand_parent, cand_letter = cand_parent[order], cand_letter[order]
        keys = _grid_keys(cand_a, cand_c)

        old_keys = np.concatenate(key_parts[-2:])
        both = np.concatenate([old_keys, keys])
        _, first, inverse = np.unique(both, axis=0, return_index=True, return_inverse=True)
        inverse = inverse.ravel()
        n_old = len(old_keys)
        seen = np.zeros(len(first), dtype=bool)
        seen[inverse[:n_old]] = True
        fresh = (~seen[inverse[n_old:]]) & (first[inverse[n_old:]] == n_old + np.arange(len(keys)))

        offset = total
        a_parts.append(cand_a[fresh])
        c_parts.append(cand_c[fresh])
        parent_parts.append(cand_parent[fresh])
        letter_parts.append(cand_letter[fresh])
        length_parts.append(np.full(fresh.sum(), depth, dtype=np.int64))
        key_parts.append(keys[fresh])
        total += int(fresh.sum())
        if total > max_elements:
            raise ResourceLimitError(
                f"ball of radius {cutoff:.4f} exceeds {max_elements} elements; raise max_elements"
            )

    a = np.concatenate(a_parts)
    c = np.concatenate(c_parts)
    parent = np.concatenate(parent_parts)
    letter = np.concatenate(letter_parts)
    length = np.concatenate(length_parts)
    a, c, parent, letter, length = _merge_duplicates(a, c, parent, letter, length)

    disp = 2.0 * acosh1p(np.maximum(np.abs(a) - 1.0, 0.0))
    order = np.lexsort((np.arange(len(disp)), disp))
    rank = np.empty_like(order)
    rank[order] = np.arange(len(order))
    parent = rank[parent[order]]
    ball = TranslateBall(
        params=params,
        cutoff=float(cutoff),
        a=a[order],
        c=c[order],
        displacement=disp[order],
        parent=parent,
        letter=letter[order],
        length=length[order],
    )
    ball.parent[0] = 0
    return ball


def _merge_duplicates(a, c, parent, letter, length):
    """Exact merge of copies that rounding placed in different grid cells."""
    tree = cKDTree(_hyperboloid(a, c))
    pairs = tree.query_pairs(_MERGE_RADIUS, output_type="ndarray")
    if len(pairs) == 0:
        return a, c, parent, letter, length
    rep = np.arange(len(a))
    for i, j in sorted(map(tuple, np.sort(pairs, axis=1))):
        rep[j] = rep[i]
    keep = rep == np.arange(len(a))
    new_index = np.cumsum(keep) - 1
    parent = new_index[rep[parent]]
    return a[keep], c[keep], parent[keep], letter[keep], length[keep]


def systole(params: SurfaceParams, ball: TranslateBall, anomaly_tol: float = 1e-9) -> float:
    """Minimum translation length ``2 arccosh(|tr| / 2)`` over non-identity elements."""
    ball.require(2.0 * params.s, "systole")
    half_trace = np.abs(ball.a[1:].real)
    bad = np.flatnonzero(half_trace <= 1.0 + anomaly_tol / 2.0)
    if len(bad):
        i = int(bad[0]) + 1
        raise NonHyperbolicError(f"element {ball.word(i)} has |trace| = {2 * half_trace[i - 1]:.12f} <= 2")
    return 2.0 * acosh(float(half_trace.min()))


def translation_lengths(ball: TranslateBall) -> np.ndarray:
    return 2.0 * acosh1p(np.maximum(np.abs(ball.a.real) - 1.0, 0.0))


def find_identity_relators(params: SurfaceParams, max_word_length: int) -> list[tuple[int, ...]]:
    """Freely reduced words of length ``<= max_word_length`` whose product is the identity.

    Meet in the middle: any relator ``u v`` with ``|u| = ceil(L/2)`` gives a
    collision between ``u`` and ``v^{-1}``, so all reduced words of half the
    length are enumerated and equal elements paired up.
    """
    if max_word_length < 1:
        raise DomainError("max_word_length must be positive")
    n = params.n_sides
    half = (max_word_length + 1) // 2
    gens = params.side_pairings
    ga = np.array([t.a for t in gens])
    gc = np.array([t.c for t in gens])
    inverse_of = np.array([(k + n // 2) % n for k in range(n)])

    a_all, c_all, words = [np.array([1.0 + 0j])], [np.array([0j])], [np.zeros((1, 0), dtype=np.int64)]
    fa, fc, fw = a_all[0], c_all[0], words[0]
    for _ in range(half):
        na, nc, nw = [], [], []
        for k in range(n):
            ok = np.ones(len(fa), dtype=bool) if fw.shape[1] == 0 else fw[:, -1] != inverse_of[k]
            na.append(fa[ok] * ga[k] + np.conj(fc[ok]) * gc[k])
            nc.append(fc[ok] * ga[k] + np.conj(fa[ok]) * gc[k])
            nw.append(np.column_stack([fw[ok], np.full(ok.sum(), k, dtype=np.int64)]))
        fa, fc, fw = np.concatenate(na), np.concatenate(nc), nw
        a_all.append(fa)
        c_all.append(fc)
        words.append(np.concatenate(fw))
        fw = words[-1]

    a = np.concatenate(a_all)
    c = np.concatenate(c_all)
    flat = [tuple(int(x) for x in w) for block in words for w in block]
    tree = cKDTree(_hyperboloid(a, c))
    pairs = tree.query_pairs(_MERGE_RADIUS, output_type="ndarray")

    found = set()
    for i, j in pairs:
        u, v = flat[i], flat[j]
        # u == v as elements, so u v^{-1} is a relator
        candidate = [index_to_letter(k, params.genus) for k in u]
        candidate += [-index_to_letter(k, params.genus) for k in reversed(v)]
        word = tuple(free_reduce(candidate))
        if 0 < len(word) <= max_word_length:
            # pairs come unordered, so add the inverse relator as well
            found.update((word, tuple(-x for x in reversed(word))))
    out = []
    for word in sorted(found, key=lambda w: (len(w), w)):
        if word_isometry(params, word).is_close(Isometry.identity(), 1e-8):
            out.append(word)
    return out


def write_ball_csv(ball: TranslateBall, path) -> None:
    """One row per element: word, matrix entries, displacement."""
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["word", "a_re", "a_im", "c_re", "c_im", "displacement"])
        for i in range(len(ball)):
            word = " ".join(str(x) for x in ball.word(i))
            writer.writerow([
                word,
                repr(float(ball.a[i].real)),
                repr(float(ball.a[i].imag)),
                repr(float(ball.c[i].real)),
                repr(float(ball.c[i].imag)),
                repr(float(ball.displacement[i])),
            ])
