from fractions import Fraction

from hyperperiods.moduli.polytope import (
    Halfspace,
    Polyhedron,
    Polytope,
    affine_rank,
    order_ccw,
    parallel,
)

F = Fraction


def _pts(*coords):
    return [tuple(F(c) for c in p) for p in coords]


def test_hull_drops_interior_and_edge_points():
    square = Polytope.hull(_pts((0, 0), (1, 0), (1, 1), (0, 1), (F(1, 2), F(1, 2)), (F(1, 2), 0)))
    assert square.vertices == ((0, 0), (0, 1), (1, 0), (1, 1))
    assert len(square.facets) == 4
    assert square.dimension == 2


def test_closed_and_open_membership():
    square = Polytope.hull(_pts((0, 0), (1, 0), (1, 1), (0, 1)))
    assert square.contains((F(1, 2), F(1, 2)), strict=True)
    assert square.contains((F(1), F(1, 2)))
    assert not square.contains((F(1), F(1, 2)), strict=True)
    assert not square.contains((F(2), F(0)))


def test_lower_dimensional_hull_keeps_its_affine_span():
    segment = Polytope.hull(_pts((0, 0, 0), (1, 1, 1)))
    assert segment.dimension == 1
    assert len(segment.equalities) == 2
    assert segment.contains((F(1, 2),) * 3, strict=True)
    assert not segment.contains((F(1, 2), F(1, 2), F(0)))


def test_single_point_hull():
    point = Polytope.hull(_pts((1, 2)))
    assert point.vertices == ((1, 2),)
    assert point.contains((F(1), F(2)))
    assert not point.contains((F(1), F(3)))


def test_simplex_as_polyhedron():
    ineq = tuple(
        Halfspace(tuple(F(-int(i == j)) for j in range(3)), F(0)) for i in range(3)
    )
    simplex = Polyhedron(3, ((F(1), F(1), F(1)),), (F(1),), ineq)
    assert set(simplex.vertices) == {(1, 0, 0), (0, 1, 0), (0, 0, 1)}
    assert simplex.dimension == 2
    assert simplex.barycentre() == (F(1, 3), F(1, 3), F(1, 3))
    assert simplex.tight((F(1), F(0), F(0))) == frozenset({1, 2})
    assert simplex.contains((F(1, 2), F(1, 2), F(0)))
    assert not simplex.contains((F(1, 2), F(1, 2), F(0)), strict=True)


def test_inconsistent_polyhedron_is_empty():
    empty = Polyhedron(1, (), (), (Halfspace((F(1),), F(-1)), Halfspace((F(-1),), F(0))))
    assert empty.is_empty
    assert empty.vertices == ()


def test_order_ccw_walks_a_square():
    pts = _pts((1, 1), (0, 0), (1, 0), (0, 1))
    assert [pts[i] for i in order_ccw(pts)] == _pts((1, 1), (0, 1), (0, 0), (1, 0))


def test_parallel_and_rank():
    assert parallel((F(1), F(2)), (F(2), F(4)))
    assert not parallel((F(1), F(0)), (F(0), F(1)))
    assert affine_rank([]) == -1
    assert affine_rank(_pts((0, 0), (1, 1), (2, 2))) == 1
