import csv
import itertools
import math

import numpy as np
import pytest

from bolza import enumerate_ball, surface_params
from bolza.errors import DomainError, InsufficientBallError, ResourceLimitError
from bolza.group import (
    find_identity_relators,
    free_reduce,
    index_to_letter,
    letter_to_index,
    systole,
    translation_lengths,
    word_isometry,
    write_ball_csv,
)
from bolza.hyperbolic import Isometry, disk_distance
from bolza.surface import Membership, contains_fundamental


def brute_force_ball(params, cutoff, max_len):
    """Every freely reduced word up to ``max_len``, kept if it moves 0 by at most ``cutoff``."""
    letters = [k for k in range(1, 2 * params.genus + 1)] + [-k for k in range(1, 2 * params.genus + 1)]
    points = {}
    for n in range(max_len + 1):
        for word in itertools.product(letters, repeat=n):
            if any(word[i] == -word[i + 1] for i in range(n - 1)):
                continue
            f = word_isometry(params, word)
            if f.displacement() <= cutoff + 1e-9:
                z = f(0)
                points.setdefault((round(z.real, 7), round(z.imag, 7)), f)
    return points


def test_letters_round_trip():
    for g in (2, 3):
        for k in range(4 * g):
            assert letter_to_index(index_to_letter(k, g), g) == k
    with pytest.raises(DomainError):
        letter_to_index(0, 2)
    with pytest.raises(DomainError):
        letter_to_index(5, 2)
    assert free_reduce([1, 2, -2, -1, 3]) == [3]


def test_word_isometry_uses_signed_letters(params2):
    t0 = params2.side_pairings[0]
    assert word_isometry(params2, (1,)).is_close(t0)
    assert word_isometry(params2, (-1,)).is_close(t0.inverse())
    assert word_isometry(params2, (1, -1)).is_close(Isometry.identity())


@pytest.mark.parametrize("genus,radius", [(2, 2.0), (3, 1.3)])
def test_ball_matches_brute_force(genus, radius):
    p = surface_params(genus)
    cutoff = radius * p.R
    ball = enumerate_ball(p, cutoff)
    oracle = brute_force_ball(p, cutoff, int(ball.length.max()))
    got = {(round(z.real, 7), round(z.imag, 7)) for z in ball.orbit(0)}
    assert got == set(oracle)


def test_ball_words_reproduce_matrices(ball2, params2):
    rng = np.random.default_rng(0)
    for i in rng.choice(len(ball2), 200, replace=False):
        word = ball2.word(int(i))
        assert len(word) == ball2.length[i]
        assert word_isometry(params2, word).is_close(ball2.isometry(int(i)), 1e-8 * abs(ball2.a[i]) ** 2)


def test_ball_sorted_and_identity_first(ball2):
    assert ball2.isometry(0).is_close(Isometry.identity())
    assert ball2.word(0) == ()
    assert np.all(np.diff(ball2.displacement) >= 0)
    assert ball2.displacement[-1] <= ball2.cutoff + 1e-9


def test_ball_monotone(params2):
    small = enumerate_ball(params2, 2 * params2.R)
    big = enumerate_ball(params2, 3 * params2.R)
    for i in range(len(small)):
        assert big.find(small.isometry(i)) is not None
    assert big.prefix(small.cutoff) == len(small)


def test_ball_closed_under_inversion(ball2):
    for i in range(0, len(ball2), 7):
        assert ball2.find(ball2.isometry(i).inverse()) is not None


def test_discreteness(ball2):
    from scipy.spatial import cKDTree

    entries = np.column_stack([ball2.a.real, ball2.a.imag, ball2.c.real, ball2.c.imag])
    nearest, _ = cKDTree(entries).query(entries, k=2)
    assert nearest[:, 1].min() > 1e-6


def test_orbit_points_outside_open_polygon(ball2, params2):
    orbit = ball2.orbit(0)
    assert contains_fundamental(params2, orbit[0]) is Membership.INTERIOR
    for z in orbit[1:2000]:
        assert contains_fundamental(params2, z) is not Membership.INTERIOR


def test_ball_count_genus_two(ball2):
    # regression anchor for the 4R ball at genus 2
    assert len(ball2) == 4553


def test_resource_limit(params2):
    with pytest.raises(ResourceLimitError):
        enumerate_ball(params2, 4 * params2.R, max_elements=100)
    with pytest.raises(DomainError):
        enumerate_ball(params2, 0.0)


def test_find_and_require(ball2, params2):
    t = params2.side_pairings[3]
    assert ball2.find(t) is not None
    far = word_isometry(params2, (1, 2, 3, 4, 1, 2, 3, 4, 1, 2))
    assert ball2.find(far) is None
    with pytest.raises(InsufficientBallError):
        ball2.require(10 * params2.R, "test")


def test_systole_genus_two(params2):
    expected = 2 * math.acosh(1 + math.sqrt(2))
    two = systole(params2, enumerate_ball(params2, 2 * params2.s))
    three = systole(params2, enumerate_ball(params2, 3 * params2.s))
    assert two == pytest.approx(expected, abs=1e-9)
    assert three == pytest.approx(two, abs=1e-9)
    with pytest.raises(InsufficientBallError):
        systole(params2, enumerate_ball(params2, params2.s))


def test_translation_lengths(ball2):
    tl = translation_lengths(ball2)
    assert tl[0] == 0.0
    assert tl[1:].min() > 3.0
    # translation length never exceeds the displacement of the base point
    assert np.all(tl <= ball2.displacement + 1e-9)


def test_relators_genus_two(params2):
    assert find_identity_relators(params2, 7) == []
    rels = find_identity_relators(params2, 8)
    assert len(rels) == 16  # eight cyclic rotations of the defining relator and their inverses
    for word in rels:
        assert len(word) == 8
        assert word_isometry(params2, word).is_close(Isometry.identity(), 1e-8)


def test_relators_genus_three(params3):
    rels = find_identity_relators(params3, 12)
    assert rels and all(len(w) == 12 for w in rels)
    assert find_identity_relators(params3, 11) == []


def test_ball_csv(tmp_path, params2):
    ball = enumerate_ball(params2, params2.s)
    path = tmp_path / "ball.csv"
    write_ball_csv(ball, path)
    rows = list(csv.DictReader(path.open()))
    assert len(rows) == len(ball) == 1 + 4 * params2.genus
    assert rows[0]["word"] == ""
    for row in rows[1:]:
        word = tuple(int(x) for x in row["word"].split())
        f = word_isometry(params2, word)
        assert disk_distance(0, f(0)) == pytest.approx(float(row["displacement"]), abs=1e-9)
