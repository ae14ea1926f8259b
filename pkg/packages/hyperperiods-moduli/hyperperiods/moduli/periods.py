"""Period mapping on a coordinate space.

The canonical labyrinth is never drawn. Its trace is read off the walk along
the boundary of the upper half-plane cut along the tree: the touch points of
the arcs ending at upper branchpoints, and the signed real vertical edges that
make up the arcs lying on the real ovals.
"""

from __future__ import annotations

import logging
import random
from collections import Counter
from collections.abc import Mapping, Sequence
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import prod

from .errors import (
    ExceptionalGraphError,
    MalformedGraphError,
    OuterFaceError,
    TargetOutsideImageError,
    UnsupportedError,
)
from .graph import (
    Half,
    PlanarTree,
    WeightAssignment,
    branchpoints,
    canonical_form,
    invariants,
    is_branchpoint,
)
from .polytope import Halfspace, Polyhedron, Polytope, Vector, affine_rank, parallel

logger = logging.getLogger(__name__)


# --------------- Boundary walk ---------------


@dataclass(frozen=True)
class BoundaryWalk:
    """Vertex visits from the left end of the axis to the right end.

    ``edges[i]`` is crossed between ``visits[i]`` and ``visits[i + 1]``.
    """

    visits: tuple[int, ...]
    edges: tuple[int, ...]

    def positions(self, v: int) -> list[int]:
        return [i for i, w in enumerate(self.visits) if w == v]

    def vertical_after(self, tree: PlanarTree, position: int) -> Counter[int]:
        """Vertical edges crossed after ``position``, with multiplicity."""
        return Counter(e for e in self.edges[position:] if tree.edges[e].is_vertical)


def _leave(tree: PlanarTree, v: int, arrived: int | None) -> int | None:
    if tree.halves[v] is Half.REAL:
        ups = tree.upper_ends(v)
        if arrived is None or arrived == tree.left_edge(v):
            return ups[-1] if ups else tree.right_edge(v)
        i = ups.index(arrived)
        return ups[i - 1] if i > 0 else tree.right_edge(v)
    return tree.prev_ccw(v, arrived)


def boundary_walk(tree: PlanarTree) -> BoundaryWalk:
    v = tree.axis[0]
    visits, edges = [v], []
    arrived: int | None = None
    limit = 2 * len(tree.edges) + 1
    while (e := _leave(tree, v, arrived)) is not None:
        edges.append(e)
        if len(edges) > limit:
            raise MalformedGraphError("Boundary walk does not terminate")
        v, arrived = tree.neighbour(v, e), e
        visits.append(v)
    return BoundaryWalk(tuple(visits), tuple(edges))


def boundary_H(  # noqa: N802
    tree: PlanarTree, weights: WeightAssignment, v: int, visit: int = 0
) -> Fraction:
    """Sum of vertical weights met after the ``visit``-th passage through ``v``."""
    tree.check_vertex(v)
    walk = boundary_walk(tree)
    where = walk.positions(v)
    if not where:
        raise MalformedGraphError(f"Vertex {v} is not on the boundary walk")
    if not 0 <= visit < len(where):
        raise MalformedGraphError(f"Vertex {v} is visited {len(where)} time(s), not {visit + 1}")
    counts = walk.vertical_after(tree, where[visit])
    return sum((n * Fraction(weights.heights[e]) for e, n in counts.items()), Fraction(0))


def _upper_branchpoints(tree: PlanarTree) -> list[int]:
    return [v for v in branchpoints(tree) if tree.halves[v] is Half.UPPER]


def labyrinth_count(tree: PlanarTree) -> int:
    """Number of canonical labyrinths: product of degrees of upper branchpoints."""
    return prod(len(tree.rotation[v]) for v in _upper_branchpoints(tree))


@dataclass(frozen=True)
class CanonicalLabyrinthTrace:
    """``touch[s - k]`` is the walk position of the arc end for ``s = k..g``;
    ``arcs[s]`` lists ``(edge, sign)`` for the real arcs ``s < k``."""

    genus: int
    ovals: int
    touch: tuple[int, ...]
    touch_vertices: tuple[int, ...]
    arcs: tuple[tuple[tuple[int, int], ...], ...]


def labyrinth_trace(
    tree: PlanarTree,
    labyrinth_choice: Mapping[int, int] | None = None,
    walk: BoundaryWalk | None = None,
) -> CanonicalLabyrinthTrace:
    g, k = invariants(tree)
    walk = walk or boundary_walk(tree)
    choice = dict(labyrinth_choice or {})
    chosen: list[tuple[int, int]] = []
    for v in _upper_branchpoints(tree):
        where = walk.positions(v)
        if len(where) > 1 and v not in choice:
            raise ExceptionalGraphError(labyrinth_count(tree))
        i = choice.get(v, 0)
        if not 0 <= i < len(where):
            raise MalformedGraphError(f"labyrinth choice {i} out of range for vertex {v}")
        chosen.append((where[i], v))
    chosen.sort()
    # The first tip met on the walk ends the last arc.
    touch = tuple(p for p, _ in reversed(chosen))
    touch_vertices = tuple(v for _, v in reversed(chosen))

    real_points = [v for v in tree.axis if is_branchpoint(tree, v)]
    tip_positions = [p for p, _ in chosen]
    arcs = []
    for s in range(k):
        lo = tree.axis_index[real_points[2 * s]]
        hi = tree.axis_index[real_points[2 * s + 1]]
        between = {
            tree.edge_between(tree.axis[i], tree.axis[i + 1]) for i in range(lo, hi)
        }
        arc = []
        for j, e in enumerate(walk.edges):
            if e in between and tree.edges[e].is_vertical:
                m = sum(1 for p in tip_positions if p <= j)
                arc.append((e, -1 if m % 2 else 1))
        arcs.append(tuple(arc))
    return CanonicalLabyrinthTrace(g, k, touch, touch_vertices, tuple(arcs))


# --------------- Period vectors and matrices ---------------


@dataclass(frozen=True)
class PeriodVector:
    """Periods ``(Pi_0, ..., Pi_g)`` in units of pi."""

    values: tuple[Fraction, ...]

    def __iter__(self):
        return iter(self.values)

    def __len__(self) -> int:
        return len(self.values)

    def __getitem__(self, i: int) -> Fraction:
        return self.values[i]

    @property
    def total(self) -> Fraction:
        return sum(self.values, Fraction(0))

    @classmethod
    def of(cls, values: Sequence[Fraction | int | str]) -> PeriodVector:
        return cls(tuple(Fraction(v) for v in values))


@dataclass(frozen=True)
class PeriodMatrix:
    """``rows[s][j]`` is the coefficient of ``H(columns[j])`` in ``Pi_s``."""

    rows: tuple[tuple[int, ...], ...]
    columns: tuple[int, ...]

    def apply(self, heights: Sequence[Fraction]) -> PeriodVector:
        return PeriodVector(
            tuple(
                sum((c * h for c, h in zip(r, heights, strict=True)), Fraction(0))
                for r in self.rows
            )
        )

    def coefficient(self, s: int, edge: int) -> int:
        return self.rows[s][self.columns.index(edge)]


def period_matrix(
    tree: PlanarTree, labyrinth_choice: Mapping[int, int] | None = None
) -> PeriodMatrix:
    walk = boundary_walk(tree)
    trace = labyrinth_trace(tree, labyrinth_choice, walk)
    g, k = trace.genus, trace.ovals
    cols = tree.vertical_columns
    index = {e: j for j, e in enumerate(cols)}
    rows: list[list[int]] = [[0] * len(cols) for _ in range(g + 1)]
    for s in range(k):
        for e, sign in trace.arcs[s]:
            rows[s][index[e]] += 2 * sign
    for s in range(k, g + 1):
        sign = -1 if (s + g) % 2 else 1
        for e, n in walk.vertical_after(tree, trace.touch[s - k]).items():
            rows[s][index[e]] += 4 * sign * n
    return PeriodMatrix(tuple(tuple(r) for r in rows), cols)


def period_map(
    tree: PlanarTree,
    weights: WeightAssignment,
    labyrinth_choice: Mapping[int, int] | None = None,
) -> PeriodVector:
    return period_matrix(tree, labyrinth_choice).apply(weights.height_vector(tree))


# --------------- Projections and images ---------------


def projection_axes(genus: int, ovals: int) -> tuple[int, ...]:
    """Independent period coordinates: the Burau-active block for one oval."""
    if ovals == 1:
        return tuple(range(1, genus + 1))
    return tuple(range(genus))


def project(vector: Sequence[Fraction], genus: int, ovals: int) -> Vector:
    return tuple(vector[i] for i in projection_axes(genus, ovals))


def lift_target(genus: int, ovals: int, point: Sequence[Fraction | int | str]) -> PeriodVector:
    """Complete a projected point to a full period vector with total 2."""
    coords = [Fraction(c) for c in point]
    axes = projection_axes(genus, ovals)
    if len(coords) == genus + 1:
        vector = PeriodVector(tuple(coords))
        if vector.total != 2:
            raise TargetOutsideImageError(f"Periods must sum to 2, got {vector.total}")
        return vector
    if len(coords) != len(axes):
        raise UnsupportedError(
            f"Expected {len(axes)} or {genus + 1} period coordinates, got {len(coords)}"
        )
    full = [Fraction(0)] * (genus + 1)
    for i, c in zip(axes, coords, strict=True):
        full[i] = c
    (missing,) = set(range(genus + 1)) - set(axes)
    full[missing] = 2 - sum(coords, Fraction(0))
    return PeriodVector(tuple(full))


def simplex_images(
    tree: PlanarTree, labyrinth_choice: Mapping[int, int] | None = None
) -> list[Vector]:
    """Projected periods at the vertices of the height simplex, in column order."""
    g, k = invariants(tree)
    m = period_matrix(tree, labyrinth_choice)
    out = []
    for j, e in enumerate(m.columns):
        h = [Fraction(0)] * len(m.columns)
        h[j] = Fraction(1, tree.column_weight(e))
        out.append(project(m.apply(h).values, g, k))
    return out


def image_polytope(
    tree: PlanarTree, labyrinth_choice: Mapping[int, int] | None = None
) -> Polytope:
    return Polytope.hull(simplex_images(tree, labyrinth_choice))


# --------------- Local fibers ---------------


@dataclass(frozen=True)
class LocalFiber:
    """Closed fiber over a target: height section times the width cone.

    Coordinates are the tree's vertical columns followed by its free vertices.
    """

    tree: PlanarTree
    target: PeriodVector
    section: Polyhedron
    cone: Polyhedron

    @property
    def columns(self) -> tuple[int, ...]:
        return self.tree.vertical_columns

    @property
    def free(self) -> tuple[int, ...]:
        return self.tree.free_vertices

    def truncated(self, radius: Fraction) -> Polyhedron:
        """The product polyhedron with every width bounded by ``radius``."""
        m, f = len(self.columns), len(self.free)
        n = m + f
        zeros_h = (Fraction(0),) * m
        zeros_w = (Fraction(0),) * f
        eq = tuple(r + zeros_w for r in self.section.eq_rows)
        ineq = [Halfspace(h.normal + zeros_w, h.offset) for h in self.section.inequalities]
        ineq += [Halfspace(zeros_h + h.normal, h.offset) for h in self.cone.inequalities]
        for i in range(f):
            unit = tuple(Fraction(int(i == j)) for j in range(f))
            ineq.append(Halfspace(zeros_h + unit, Fraction(radius)))
        return Polyhedron(n, eq, self.section.eq_rhs, tuple(ineq))

    def weights(self, point: Sequence[Fraction]) -> WeightAssignment:
        m = len(self.columns)
        return WeightAssignment.symmetric(
            self.tree,
            dict(zip(self.columns, point[:m], strict=True)),
            dict(zip(self.free, point[m:], strict=True)),
        )


def _section(tree: PlanarTree, target: PeriodVector, matrix: PeriodMatrix) -> Polyhedron:
    cols = matrix.columns
    m = len(cols)
    rows = [tuple(Fraction(c) for c in r) for r in matrix.rows]
    rows.append(tuple(Fraction(tree.column_weight(e)) for e in cols))
    rhs = (*target.values, Fraction(1))
    ineq = tuple(
        Halfspace(tuple(Fraction(-int(i == j)) for j in range(m)), Fraction(0)) for i in range(m)
    )
    return Polyhedron(m, tuple(rows), rhs, ineq)


def _upper_id(tree: PlanarTree, v: int) -> int:
    return tree.vertex_mirror[v] if tree.halves[v] is Half.LOWER else v


def width_cone(tree: PlanarTree) -> Polyhedron:
    """Non-negative widths with ``W(tail) <= W(head)`` on every horizontal edge.

    Vertices of the vertical subgraph carry no coordinate: their width is 0.
    """
    free = tree.free_vertices
    index = {v: i for i, v in enumerate(free)}
    f = len(free)
    seen: dict[tuple[Fraction, ...], Halfspace] = {}
    for i in range(f):
        unit = tuple(Fraction(-int(i == j)) for j in range(f))
        seen[unit] = Halfspace(unit, Fraction(0))
    for e in tree.edges:
        if e.is_vertical:
            continue
        t, h = _upper_id(tree, e.tail), _upper_id(tree, e.head)
        normal = [Fraction(0)] * f
        if t in index:
            normal[index[t]] += 1
        if h in index:
            normal[index[h]] -= 1
        if any(normal):
            seen.setdefault(tuple(normal), Halfspace(tuple(normal), Fraction(0)))
    return Polyhedron(f, (), (), tuple(seen[k] for k in sorted(seen)))


def local_fiber(
    tree: PlanarTree,
    target: PeriodVector,
    labyrinth_choice: Mapping[int, int] | None = None,
) -> LocalFiber:
    g, _ = invariants(tree)
    if len(target) != g + 1:
        raise UnsupportedError(f"Target has {len(target)} components, genus {g} needs {g + 1}")
    section = _section(tree, target, period_matrix(tree, labyrinth_choice))
    if section.is_empty:
        raise TargetOutsideImageError(
            f"Target {[str(x) for x in target]} is outside the closed image of {canonical_form(tree)}"
        )
    return LocalFiber(tree, target, section, width_cone(tree))


# --------------- Boundary fibers ---------------


@dataclass(frozen=True)
class BoundaryFiber:
    """A face of the height simplex carrying a fiber of maximal dimension."""

    zeroed: tuple[int, ...]
    inner: bool
    subordinate: str | None
    sample: WeightAssignment


def boundary_fibers(
    tree: PlanarTree,
    target: PeriodVector,
    rng: random.Random | None = None,
    labyrinth_choice: Mapping[int, int] | None = None,
) -> list[BoundaryFiber]:
    """Proper faces whose codimension equals that of their image and whose fiber
    meets their relative interior, each classified as inner or outer."""
    from .degenerate import face_widths, reduce

    rng = rng or random.Random(0)
    g, k = invariants(tree)
    matrix = period_matrix(tree, labyrinth_choice)
    cols = matrix.columns
    m = len(cols)
    images = simplex_images(tree, labyrinth_choice)
    full_dim = affine_rank(images)
    projected = project(target.values, g, k)
    section = _section(tree, target, matrix)
    out: list[BoundaryFiber] = []
    for size in range(1, m):
        for support in combinations(range(m), size):
            face_dim = affine_rank([images[j] for j in support])
            if (m - 1) - (size - 1) != full_dim - face_dim:
                continue
            if not Polytope.hull([images[j] for j in support]).contains(projected, strict=True):
                continue
            zeroed = tuple(cols[j] for j in range(m) if j not in support)
            extra = tuple(
                (tuple(Fraction(int(i == j)) for i in range(m)), Fraction(0))
                for j in range(m)
                if j not in support
            )
            face = Polyhedron(
                m,
                section.eq_rows + tuple(r for r, _ in extra),
                section.eq_rhs + tuple(b for _, b in extra),
                section.inequalities,
            )
            if face.is_empty:
                continue
            point = face.barycentre()
            if any(point[j] == 0 for j in support):
                continue
            sample = WeightAssignment.symmetric(
                tree, dict(zip(cols, point, strict=True)), face_widths(tree, rng)
            )
            try:
                reduced = reduce(tree, sample)
            except OuterFaceError:
                out.append(BoundaryFiber(zeroed, False, None, sample))
                continue
            out.append(BoundaryFiber(zeroed, True, canonical_form(reduced.tree), sample))
    return out


# --------------- Genus-two plates ---------------


def _tri(*pts: tuple[int, int]) -> Polytope:
    return Polytope.hull([(Fraction(x), Fraction(y)) for x, y in pts])


_F = Fraction
GENUS_TWO_REGIONS: dict[int, dict[str, Polytope]] = {
    3: {"a": _tri((0, 0), (2, 0), (0, 2))},
    2: {
        "a+": _tri((0, 0), (-2, 0), (0, -2)),
        "b": _tri((0, 0), (0, -2), (2, 0)),
        "a-": _tri((0, 0), (2, 0), (0, 2)),
    },
    1: {
        "a": _tri((0, 2), (0, 4), (-2, 4)),
        "b": Polytope.hull([(_F(0), _F(2)), (_F(-2), _F(4)), (_F(-4, 3), _F(8, 3))]),
        "c+": Polytope.hull([(_F(0), _F(0)), (_F(0), _F(2)), (_F(-4, 3), _F(8, 3))]),
        "c-": Polytope.hull([(_F(-2), _F(4)), (_F(-4), _F(4)), (_F(-4, 3), _F(8, 3))]),
        "d": Polytope.hull([(_F(0), _F(0)), (_F(-4, 3), _F(8, 3)), (_F(-4), _F(4))]),
    },
}


def genus_two_regions(ovals: int) -> dict[str, Polytope]:
    """Named triangles tiling the image of the canonical cells for genus two."""
    if ovals not in GENUS_TWO_REGIONS:
        raise UnsupportedError(f"No genus-two plate for k={ovals}")
    return dict(GENUS_TWO_REGIONS[ovals])


def classify_target(ovals: int, point: Sequence[Fraction]) -> str | None:
    """Name of the region whose interior holds ``point``; ``None`` off every interior."""
    for name, region in genus_two_regions(ovals).items():
        if region.contains(point, strict=True):
            return name
    return None


def regions_containing(ovals: int, point: Sequence[Fraction]) -> list[str]:
    return [n for n, r in genus_two_regions(ovals).items() if r.contains(point)]


# --------------- Shapes ---------------


def _right_angled(
    polygon: Sequence[tuple[Fraction, Fraction]], ambient: Sequence[Vector] | None
) -> bool:
    """Adjacent sides of a parallelogram meet at a right angle.

    With ``ambient`` vertices the angle is read in the weight coordinates: one
    coordinate is constant along the first side and another along the second.
    """
    if ambient is None:
        (x0, y0), (x1, y1), (x2, y2) = polygon[0], polygon[1], polygon[2]
        return (x1 - x0) * (x2 - x1) + (y1 - y0) * (y2 - y1) == 0
    first = [b - a for a, b in zip(ambient[0], ambient[1], strict=True)]
    second = [b - a for a, b in zip(ambient[1], ambient[2], strict=True)]
    zero_first = [i for i, d in enumerate(first) if d == 0]
    zero_second = [j for j, d in enumerate(second) if d == 0]
    return any(i != j for i in zero_first for j in zero_second)


def fiber_shape(
    polygon: Sequence[tuple[Fraction, Fraction]],
    unbounded: Sequence[bool] | None = None,
    ambient: Sequence[Vector] | None = None,
) -> str:
    """Name a convex polygon given counterclockwise, side ``i`` running from vertex ``i``.

    ``unbounded[i]`` marks sides lying on the truncation boundary. ``ambient``
    holds the same vertices in weight coordinates, for telling rectangles apart.
    """
    n = len(polygon)
    if n == 1:
        return "point"
    if n == 2:
        return "segment"
    flags = list(unbounded or [False] * n)
    cut = sum(flags)
    if cut:
        bounded = n - cut
        if bounded == 3:
            return "half-strip"
        if bounded == 2:
            return "quadrant" if cut == 2 else "sector"
        return f"unbounded-{bounded}"
    if n == 3:
        return "triangle"
    if n == 4:
        sides = [
            (polygon[(i + 1) % 4][0] - polygon[i][0], polygon[(i + 1) % 4][1] - polygon[i][1])
            for i in range(4)
        ]
        pairs = sum(parallel(sides[i], sides[i + 2]) for i in range(2))
        if pairs == 2:
            return "rectangle" if _right_angled(polygon, ambient) else "parallelogram"
        return "trapezoid" if pairs == 1 else "quadrilateral"
    if n == 5:
        return "pentagon"
    return f"polygon-{n}"
