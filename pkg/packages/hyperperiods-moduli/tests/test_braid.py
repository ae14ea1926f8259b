from fractions import Fraction
from itertools import product

import pytest
import sympy as sp

from hyperperiods.moduli.braid import (
    apply,
    burau,
    free_reduce,
    generator,
    inverse,
    is_fixed,
    orbit_in_region,
    strands,
)
from hyperperiods.moduli.config import Settings
from hyperperiods.moduli.errors import UnsupportedError
from hyperperiods.moduli.fiber import canonical_region
from hyperperiods.moduli.periods import PeriodVector, lift_target
from hyperperiods.moduli.polytope import Polytope

F = Fraction


def test_generator_block():
    assert generator(1, 2, 1) == sp.Matrix([[1, 0, 0], [0, 0, -1], [0, 1, 2]])
    assert generator(-1, 2, 1) == sp.Matrix([[1, 0, 0], [0, 2, 1], [0, -1, 0]])
    assert generator(1, 2, 1).det() == 1


def test_generator_and_inverse_cancel():
    assert burau([1, -1], 2, 1) == sp.eye(3)
    assert burau([2, -2, 1, -1], 3, 1) == sp.eye(4)


def test_braid_relation():
    assert burau([1, 2, 1], 3, 1) == burau([2, 1, 2], 3, 1)


def test_apply_matches_the_matrix():
    v = PeriodVector.of(["1/2", "1/4", "3/4", "1/2"])
    for word in [(1,), (2, 1), (1, -2, 1), (-1, -1, 2)]:
        m = burau(word, 3, 1)
        col = m * sp.Matrix([sp.Rational(x.numerator, x.denominator) for x in v])
        assert apply(word, v, 1).values == tuple(F(int(c.p), int(c.q)) for c in col)


def test_apply_preserves_the_total():
    v = PeriodVector.of(["1", "-1/2", "3/2"])
    for word in product([1, -1], repeat=3):
        assert apply(word, v, 1).total == 2


def test_word_helpers():
    assert free_reduce((1, -1, 2)) == (2,)
    assert free_reduce((2, 1, -1, -2, 1)) == (1,)
    assert inverse((1, 2, -1)) == (1, -2, -1)
    assert strands(3, 1) == 3


@pytest.mark.parametrize("letter", [0, 2, -2])
def test_generator_out_of_range(letter):
    with pytest.raises(UnsupportedError):
        generator(letter, 2, 1)


def test_fixed_line():
    assert is_fixed(PeriodVector.of(["1", "-1/2", "1/2"]), 1)
    assert not is_fixed(PeriodVector.of(["1", "-1/2", "3/2"]), 1)


def test_one_oval_orbit_in_the_canonical_region():
    target = lift_target(2, 1, ["-1/2", "3/2"])
    orbit = orbit_in_region(target, canonical_region(2, 1), 2, 1)
    assert orbit.exhaustive
    assert orbit.words == [(), (1,), (1, 1)]
    assert orbit.points[1].image.values == (F(1), F(-3, 2), F(5, 2))
    for point in orbit.points:
        assert apply(point.word, target, 1) == point.image


def test_orbit_of_a_point_near_the_top_edge():
    target = lift_target(2, 1, ["-1/2", "7/2"])
    orbit = orbit_in_region(target, canonical_region(2, 1), 2, 1)
    assert orbit.words == [()]


def test_fixed_target_is_its_own_orbit():
    box = [Polytope.hull(product([F(-9), F(9)], repeat=3))]
    target = PeriodVector.of(["2", "0", "0", "0"])
    orbit = orbit_in_region(target, box, 3, 1)
    assert orbit.exhaustive
    assert orbit.words == [()]


def test_three_strand_search_is_capped():
    box = [Polytope.hull(product([F(-99), F(99)], repeat=3))]
    target = PeriodVector.of(["1", "1/2", "1/4", "1/4"])
    orbit = orbit_in_region(target, box, 3, 1, Settings(word_length_cap=2))
    assert not orbit.exhaustive
    assert orbit.word_length_cap == 2
    assert orbit.words[0] == ()
    assert all(len(w) <= 2 for w in orbit.words)
    assert (1,) in orbit.words and (-2,) in orbit.words
    for point in orbit.points:
        assert apply(point.word, target, 1) == point.image


def test_target_of_wrong_length():
    with pytest.raises(UnsupportedError):
        orbit_in_region(PeriodVector.of(["1", "1"]), canonical_region(2, 1), 2, 1)


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_braid_relations_on_n_strands(n):
    genus = n
    for i in range(1, n - 1):
        assert burau([i, i + 1, i], genus, 1) == burau([i + 1, i, i + 1], genus, 1)
    for i in range(1, n):
        assert burau([i, -i], genus, 1) == sp.eye(genus + 1)
        for j in range(i + 2, n):
            assert burau([i, j], genus, 1) == burau([j, i], genus, 1)
            assert burau([-i, j], genus, 1) == burau([j, -i], genus, 1)


def _iterate_until_exit(target, region):
    def inside(vector):
        return any(p.contains((vector[1], vector[2])) for p in region)

    found = {(): target}
    for letter in (1, -1):
        word, vector = (), target
        while True:
            word, vector = (*word, letter), apply((letter,), vector, 1)
            if not inside(vector):
                break
            found[word] = vector
    return found


TWO_STRAND_GRID = [
    (-F(2 * i - 1, 5), F(2 * i - 1, 5) + j * (4 - F(2 * i - 1, 5)) / 5)
    for i in range(1, 6)
    for j in range(1, 5)
]


def test_two_strand_orbit_matches_direct_iteration():
    region = canonical_region(2, 1)
    assert len(TWO_STRAND_GRID) == 20
    for point in TWO_STRAND_GRID:
        target = lift_target(2, 1, point)
        assert not is_fixed(target, 1)
        orbit = orbit_in_region(target, region, 2, 1)
        assert orbit.exhaustive
        assert {p.word: p.image for p in orbit.points} == _iterate_until_exit(target, region)
