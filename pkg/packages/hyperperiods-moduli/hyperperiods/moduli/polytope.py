"""Exact rational polyhedra in low dimension.

Everything here is brute force over subsets of constraints or points, which is
fine for the handful of coordinates a genus-two or genus-three cell carries.
Linear algebra is done exactly with sympy; results come back as ``Fraction``.
"""

from __future__ import annotations

import functools
from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

import sympy as sp

Vector = tuple[Fraction, ...]


def _rational(x: Fraction | int) -> sp.Rational:
    f = Fraction(x)
    return sp.Rational(f.numerator, f.denominator)


def _fraction(x: sp.Expr) -> Fraction:
    r = sp.Rational(x)
    return Fraction(int(r.p), int(r.q))


def _matrix(rows: Sequence[Sequence[Fraction | int]], cols: int) -> sp.Matrix:
    if not rows:
        return sp.zeros(0, cols)
    return sp.Matrix([[_rational(v) for v in row] for row in rows])


def dot(a: Sequence[Fraction], b: Sequence[Fraction]) -> Fraction:
    return sum((x * y for x, y in zip(a, b, strict=True)), Fraction(0))


def affine_rank(points: Sequence[Sequence[Fraction]]) -> int:
    """Dimension of the affine hull; ``-1`` for no points."""
    if not points:
        return -1
    base = points[0]
    diffs = [[p[i] - base[i] for i in range(len(base))] for p in points[1:]]
    if not diffs:
        return 0
    return int(_matrix(diffs, len(base)).rank())


@dataclass(frozen=True)
class Halfspace:
    """``normal . x <= offset``."""

    normal: Vector
    offset: Fraction

    def value(self, x: Sequence[Fraction]) -> Fraction:
        return dot(self.normal, x) - self.offset

    def contains(self, x: Sequence[Fraction], strict: bool = False) -> bool:
        v = self.value(x)
        return v < 0 if strict else v <= 0

    def normalized(self) -> Halfspace:
        """Scale so the first nonzero normal entry is +-1."""
        lead = next((c for c in self.normal if c != 0), None)
        if lead is None:
            return self
        s = abs(lead)
        return Halfspace(tuple(c / s for c in self.normal), self.offset / s)


@dataclass(frozen=True)
class Chart:
    """Affine parametrization ``x = origin + basis^T y``."""

    origin: Vector
    basis: tuple[Vector, ...]

    @property
    def dim(self) -> int:
        return len(self.basis)

    def point(self, y: Sequence[Fraction]) -> Vector:
        out = list(self.origin)
        for coeff, b in zip(y, self.basis, strict=True):
            for i, bi in enumerate(b):
                out[i] += coeff * bi
        return tuple(out)

    def coordinates(self, x: Sequence[Fraction]) -> Vector:
        """Inverse of :meth:`point` for ``x`` on the chart."""
        if not self.basis:
            return ()
        b = _matrix(self.basis, len(self.origin)).T
        rhs = sp.Matrix([_rational(xi - oi) for xi, oi in zip(x, self.origin, strict=True)])
        gram = b.T * b
        y = gram.LUsolve(b.T * rhs)
        return tuple(_fraction(v) for v in y)


def solve_affine(
    rows: Sequence[Sequence[Fraction]], rhs: Sequence[Fraction], n: int
) -> Chart | None:
    """Solution set of ``rows . x = rhs`` in ``R^n``, or ``None`` if inconsistent."""
    if not rows:
        identity = tuple(
            tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n)
        )
        return Chart(tuple(Fraction(0) for _ in range(n)), identity)
    a = _matrix(rows, n)
    aug = a.row_join(sp.Matrix([_rational(v) for v in rhs]))
    reduced, pivots = aug.rref()
    if n in pivots:
        return None
    origin = [Fraction(0)] * n
    for r, p in enumerate(pivots):
        origin[p] = _fraction(reduced[r, n])
    basis = tuple(tuple(_fraction(v) for v in vec) for vec in a.nullspace())
    return Chart(tuple(origin), basis)


def _solve_square(rows: Sequence[Sequence[Fraction]], rhs: Sequence[Fraction]) -> Vector | None:
    d = len(rows)
    if d == 1:
        (a,), (b,) = rows[0], rhs
        return (b / a,) if a != 0 else None
    if d == 2:
        (a, b), (c, e) = rows
        det = a * e - b * c
        if det == 0:
            return None
        return ((rhs[0] * e - b * rhs[1]) / det, (a * rhs[1] - c * rhs[0]) / det)
    m = _matrix(rows, d)
    if m.rank() < d:
        return None
    sol = m.LUsolve(sp.Matrix([_rational(v) for v in rhs]))
    return tuple(_fraction(v) for v in sol)


@dataclass(frozen=True)
class Polyhedron:
    """``{x : eq_rows . x = eq_rhs, h.normal . x <= h.offset for h in inequalities}``."""

    n: int
    eq_rows: tuple[Vector, ...] = ()
    eq_rhs: Vector = ()
    inequalities: tuple[Halfspace, ...] = ()

    @functools.cached_property
    def chart(self) -> Chart | None:
        return solve_affine(self.eq_rows, self.eq_rhs, self.n)

    def restricted(self) -> list[Halfspace]:
        """Inequalities pulled back to chart coordinates; trivial ones dropped."""
        chart = self.chart
        if chart is None:
            return []
        out = []
        for h in self.inequalities:
            normal = tuple(dot(h.normal, b) for b in chart.basis)
            offset = h.offset - dot(h.normal, chart.origin)
            if all(c == 0 for c in normal):
                continue
            out.append(Halfspace(normal, offset))
        return out

    def _consistent(self) -> bool:
        chart = self.chart
        if chart is None:
            return False
        for h in self.inequalities:
            if all(dot(h.normal, b) == 0 for b in chart.basis) and not h.contains(chart.origin):
                return False
        return True

    @functools.cached_property
    def vertices(self) -> tuple[Vector, ...]:
        """Extreme points, by solving every square subsystem of tight constraints."""
        chart = self.chart
        if chart is None or not self._consistent():
            return ()
        d = chart.dim
        if d == 0:
            return (chart.origin,)
        rows = self.restricted()
        found: list[Vector] = []
        seen: set[Vector] = set()
        for subset in combinations(rows, d):
            y = _solve_square([h.normal for h in subset], [h.offset for h in subset])
            if y is None or y in seen:
                continue
            seen.add(y)
            if all(h.contains(y) for h in rows):
                found.append(y)
        return tuple(sorted(chart.point(y) for y in found))

    @property
    def is_empty(self) -> bool:
        return not self.vertices

    @property
    def dimension(self) -> int:
        return affine_rank(self.vertices)

    def contains(self, x: Sequence[Fraction], strict: bool = False) -> bool:
        if any(dot(r, x) != b for r, b in zip(self.eq_rows, self.eq_rhs, strict=True)):
            return False
        return all(h.contains(x, strict) for h in self.inequalities)

    def tight(self, x: Sequence[Fraction]) -> frozenset[int]:
        """Indices of inequalities holding with equality at ``x``."""
        return frozenset(i for i, h in enumerate(self.inequalities) if h.value(x) == 0)

    def barycentre(self) -> Vector:
        vs = self.vertices
        if not vs:
            raise ValueError("empty polyhedron has no barycentre")
        return tuple(sum((v[i] for v in vs), Fraction(0)) / len(vs) for i in range(self.n))


@dataclass(frozen=True)
class Polytope:
    """Convex hull of finitely many points, with its facets in ambient coordinates.

    ``equalities`` cut out the affine hull; ``facets`` are the relative facets.
    """

    vertices: tuple[Vector, ...]
    facets: tuple[Halfspace, ...]
    equalities: tuple[Halfspace, ...] = ()

    @property
    def dimension(self) -> int:
        return affine_rank(self.vertices)

    @property
    def ambient(self) -> int:
        return len(self.vertices[0]) if self.vertices else 0

    def contains(self, x: Sequence[Fraction], strict: bool = False) -> bool:
        """Membership; with ``strict`` the relative interior only."""
        if any(h.value(x) != 0 for h in self.equalities):
            return False
        if not self.facets:
            return True
        return all(h.contains(x, strict) for h in self.facets)

    @classmethod
    def hull(cls, points: Iterable[Sequence[Fraction]]) -> Polytope:
        pts = sorted({tuple(Fraction(c) for c in p) for p in points})
        if not pts:
            raise ValueError("hull of no points")
        n = len(pts[0])
        d = affine_rank(pts)
        if d == 0:
            eqs = tuple(
                Halfspace(tuple(Fraction(int(i == j)) for j in range(n)), pts[0][i])
                for i in range(n)
            )
            return cls((pts[0],), (), eqs)
        base = pts[0]
        diffs = [[p[i] - base[i] for i in range(n)] for p in pts[1:]]
        span = _matrix(diffs, n)
        normals = [tuple(_fraction(v) for v in vec) for vec in span.nullspace()]
        equalities = tuple(Halfspace(nv, dot(nv, base)).normalized() for nv in normals)
        chart = solve_affine(
            [h.normal for h in equalities], [h.offset for h in equalities], n
        )
        assert chart is not None
        local = [chart.coordinates(p) for p in pts]
        facets_local = _hull_facets(local)
        facets = tuple(_lift_facet(h, chart) for h in facets_local)
        verts = [
            p
            for p, y in zip(pts, local, strict=True)
            if _is_extreme(y, facets_local, d)
        ]
        return cls(tuple(verts), facets, equalities)


def _hull_facets(points: Sequence[Vector]) -> list[Halfspace]:
    """Facets of a full-dimensional point set in its own coordinates."""
    d = len(points[0])
    if d == 1:
        lo = min(p[0] for p in points)
        hi = max(p[0] for p in points)
        return [Halfspace((Fraction(-1),), -lo), Halfspace((Fraction(1),), hi)]
    facets: dict[tuple[Vector, Fraction], Halfspace] = {}
    for subset in combinations(points, d):
        base = subset[0]
        diffs = [[q[i] - base[i] for i in range(d)] for q in subset[1:]]
        null = _matrix(diffs, d).nullspace()
        if len(null) != 1:
            continue
        normal = tuple(_fraction(v) for v in null[0])
        h = Halfspace(normal, dot(normal, base))
        values = [h.value(p) for p in points]
        if all(v <= 0 for v in values):
            pass
        elif all(v >= 0 for v in values):
            h = Halfspace(tuple(-c for c in normal), -h.offset)
        else:
            continue
        h = h.normalized()
        facets[(h.normal, h.offset)] = h
    return sorted(facets.values(), key=lambda h: (h.normal, h.offset))


def _is_extreme(y: Vector, facets: Sequence[Halfspace], d: int) -> bool:
    tight = [h.normal for h in facets if h.value(y) == 0]
    if len(tight) < d:
        return False
    return int(_matrix(tight, d).rank()) == d


def _lift_facet(h: Halfspace, chart: Chart) -> Halfspace:
    """Pull a chart-coordinate halfspace back to ambient coordinates.

    Uses ``y = G^{-1} B^T (x - origin)`` with ``G = B^T B``.
    """
    n = len(chart.origin)
    b = _matrix(chart.basis, n).T
    g_inv = (b.T * b).inv()
    row = sp.Matrix([[_rational(c) for c in h.normal]]) * g_inv * b.T
    normal = tuple(_fraction(v) for v in row)
    return Halfspace(normal, h.offset + dot(normal, chart.origin)).normalized()


# --------------- Planar helpers ---------------


def _half(v: tuple[Fraction, Fraction]) -> int:
    x, y = v
    return 0 if (y > 0 or (y == 0 and x > 0)) else 1


def order_ccw(points: Sequence[tuple[Fraction, Fraction]]) -> list[int]:
    """Indices of a convex polygon's vertices in counterclockwise order."""
    if len(points) <= 2:
        return list(range(len(points)))
    cx = sum((p[0] for p in points), Fraction(0)) / len(points)
    cy = sum((p[1] for p in points), Fraction(0)) / len(points)
    rel = [(p[0] - cx, p[1] - cy) for p in points]

    def cmp(i: int, j: int) -> int:
        hi, hj = _half(rel[i]), _half(rel[j])
        if hi != hj:
            return hi - hj
        cross = rel[i][0] * rel[j][1] - rel[i][1] * rel[j][0]
        return -1 if cross > 0 else (1 if cross < 0 else 0)

    return sorted(range(len(points)), key=functools.cmp_to_key(cmp))


def parallel(a: Sequence[Fraction], b: Sequence[Fraction]) -> bool:
    return a[0] * b[1] - a[1] * b[0] == 0
