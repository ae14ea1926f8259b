"""Burau action of ``Br_{g-k+1}`` on period vectors and orbits inside a region.

Words are tuples of signed generator indices: ``i`` is the generator acting on
the coordinates ``s = i + k - 1`` and ``s + 1``, ``-i`` its inverse.
"""

from __future__ import annotations

import logging
from collections import deque
from collections.abc import Sequence
from dataclasses import dataclass
from fractions import Fraction
from math import ceil, floor

import sympy as sp

from .config import Settings
from .errors import UnsupportedError
from .periods import PeriodVector, project
from .polytope import Polytope

logger = logging.getLogger(__name__)

BraidWord = tuple[int, ...]

_BLOCK = ((0, -1), (1, 2))
_INVERSE_BLOCK = ((2, 1), (-1, 0))


def strands(genus: int, ovals: int) -> int:
    return genus - ovals + 1


def _check_letter(letter: int, genus: int, ovals: int) -> int:
    n = strands(genus, ovals)
    if letter == 0 or abs(letter) > n - 1:
        raise UnsupportedError(f"Generator {letter} out of range for Br_{n}")
    return abs(letter) + ovals - 1


def generator(i: int, genus: int, ovals: int) -> sp.Matrix:
    """Matrix of the signed generator ``i`` on the ``(g + 1)``-vector of periods."""
    s = _check_letter(i, genus, ovals)
    block = _BLOCK if i > 0 else _INVERSE_BLOCK
    m = sp.eye(genus + 1)
    for a in range(2):
        for b in range(2):
            m[s + a, s + b] = block[a][b]
    return m


def burau(word: Sequence[int], genus: int, ovals: int) -> sp.Matrix:
    """Product of generator matrices, leftmost letter acting last."""
    m = sp.eye(genus + 1)
    for letter in word:
        m = m * generator(letter, genus, ovals)
    return m


def inverse(word: Sequence[int]) -> BraidWord:
    return tuple(-x for x in reversed(word))


def free_reduce(word: Sequence[int]) -> BraidWord:
    out: list[int] = []
    for x in word:
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    return tuple(out)


def _act(letter: int, values: list[Fraction], ovals: int) -> None:
    s = abs(letter) + ovals - 1
    a, b = values[s], values[s + 1]
    if letter > 0:
        values[s], values[s + 1] = -b, a + 2 * b
    else:
        values[s], values[s + 1] = 2 * a + b, -a


def apply(word: Sequence[int], vector: PeriodVector, ovals: int) -> PeriodVector:
    genus = len(vector) - 1
    values = list(vector.values)
    for letter in reversed(word):
        _check_letter(letter, genus, ovals)
        _act(letter, values, ovals)
    return PeriodVector(tuple(values))


def is_fixed(vector: PeriodVector, ovals: int) -> bool:
    """True when every generator fixes ``vector``: ``Pi_s + Pi_{s+1} = 0`` on the active block."""
    genus = len(vector) - 1
    return all(vector[s] + vector[s + 1] == 0 for s in range(ovals, genus))


# --------------- Orbits ---------------


@dataclass(frozen=True)
class OrbitPoint:
    word: BraidWord
    image: PeriodVector


@dataclass(frozen=True)
class Orbit:
    """Braid images of a target inside a closed region.

    ``exhaustive`` is false when the search was cut at ``word_length_cap``.
    """

    points: tuple[OrbitPoint, ...]
    exhaustive: bool
    word_length_cap: int | None = None

    @property
    def words(self) -> list[BraidWord]:
        return [p.word for p in self.points]


def _in_region(point: Sequence[Fraction], region: Sequence[Polytope]) -> bool:
    return any(p.contains(point) for p in region)


def _power_interval(
    base: Sequence[Fraction], step: Sequence[Fraction], polytope: Polytope
) -> tuple[int, int] | None:
    """Integers ``j`` with ``base + j * step`` in ``polytope``."""
    lo: Fraction | None = None
    hi: Fraction | None = None
    constraints = [(h.normal, h.offset, False) for h in polytope.facets]
    constraints += [(h.normal, h.offset, True) for h in polytope.equalities]
    for normal, offset, equality in constraints:
        a = sum((n * x for n, x in zip(normal, base, strict=True)), Fraction(0)) - offset
        b = sum((n * x for n, x in zip(normal, step, strict=True)), Fraction(0))
        if b == 0:
            if a > 0 or (equality and a != 0):
                return None
            continue
        bound = -a / b
        if equality:
            if bound.denominator != 1:
                return None
            lo = bound if lo is None else max(lo, bound)
            hi = bound if hi is None else min(hi, bound)
        elif b > 0:
            hi = bound if hi is None else min(hi, bound)
        else:
            lo = bound if lo is None else max(lo, bound)
    if lo is None or hi is None:
        raise UnsupportedError("Orbit is unbounded inside the region")
    lo_i, hi_i = ceil(lo), floor(hi)
    if lo_i > hi_i:
        return None
    return lo_i, hi_i


def _two_strand_orbit(
    target: PeriodVector, region: Sequence[Polytope], genus: int, ovals: int
) -> Orbit:
    s = ovals
    total = target[s] + target[s + 1]
    step = [Fraction(0)] * (genus + 1)
    step[s], step[s + 1] = -total, total
    base = project(target.values, genus, ovals)
    dstep = project(step, genus, ovals)
    powers: set[int] = set()
    for polytope in region:
        interval = _power_interval(base, dstep, polytope)
        if interval is not None:
            powers.update(range(interval[0], interval[1] + 1))
    points = []
    for j in sorted(powers):
        word: BraidWord = (1,) * j if j >= 0 else (-1,) * (-j)
        image = PeriodVector(tuple(t + j * d for t, d in zip(target.values, step, strict=True)))
        points.append(OrbitPoint(word, image))
    return Orbit(tuple(points), exhaustive=True)


def _breadth_first_orbit(
    target: PeriodVector, region: Sequence[Polytope], genus: int, ovals: int, cap: int
) -> Orbit:
    n = strands(genus, ovals)
    letters = [x for i in range(1, n) for x in (i, -i)]
    seen = {target.values: ()}
    queue: deque[tuple[BraidWord, PeriodVector]] = deque([((), target)])
    while queue:
        word, vector = queue.popleft()
        if len(word) >= cap:
            continue
        for letter in letters:
            if word and word[0] == -letter:
                continue
            image = apply((letter,), vector, ovals)
            if image.values in seen:
                continue
            longer = (letter, *word)
            seen[image.values] = longer
            queue.append((longer, image))
    points = [
        OrbitPoint(word, PeriodVector(values))
        for values, word in seen.items()
        if _in_region(project(values, genus, ovals), region)
    ]
    points.sort(key=lambda p: (len(p.word), p.word))
    return Orbit(tuple(points), exhaustive=False, word_length_cap=cap)


def orbit_in_region(
    target: PeriodVector,
    region: Sequence[Polytope],
    genus: int,
    ovals: int,
    settings: Settings | None = None,
) -> Orbit:
    """Braid images of ``target`` lying in the closed union ``region``.

    ``region`` holds polytopes in the coordinates of ``projection_axes``. One or two
    strands give an exact answer; more strands fall back to a breadth-first search
    over freely reduced words capped at ``settings.word_length_cap``.
    """
    settings = settings or Settings()
    if len(target) != genus + 1:
        raise UnsupportedError(
            f"Target has {len(target)} components, genus {genus} needs {genus + 1}"
        )
    n = strands(genus, ovals)
    if n <= 1 or is_fixed(target, ovals):
        inside = _in_region(project(target.values, genus, ovals), region)
        points = (OrbitPoint((), target),) if inside else ()
        return Orbit(points, exhaustive=True)
    if n == 2:
        orbit = _two_strand_orbit(target, region, genus, ovals)
    else:
        orbit = _breadth_first_orbit(target, region, genus, ovals, settings.word_length_cap)
    logger.debug(
        "orbit for g=%d k=%d: %d point(s), exhaustive=%s",
        genus,
        ovals,
        len(orbit.points),
        orbit.exhaustive,
    )
    return orbit
