"""Global fibers of the period mapping.

A fiber is carved into patches, one per braid image of the target and per cell
whose closed coordinate space meets it. Patches are glued along their inner
boundary pieces and the resulting polygonal complex is checked to be a cell.
"""

from __future__ import annotations

import logging
import random
from collections import Counter, defaultdict
from collections.abc import Iterable, Sequence
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from itertools import combinations
from typing import Any

import networkx as nx
import sympy as sp

from .braid import (
    BraidWord,
    Orbit,
    OrbitPoint,
    burau,
    inverse,
    is_fixed,
    orbit_in_region,
    strands,
)
from .config import Settings
from .degenerate import reduce
from .enumerate import full_dim_catalog
from .errors import (
    AssemblyIncompleteError,
    OuterFaceError,
    TargetOutsideImageError,
    UnsupportedError,
)
from .graph import (
    PlanarTree,
    WeightAssignment,
    canonical_form,
    canonical_labels,
    canonical_weights,
    invariants,
)
from .periods import (
    LocalFiber,
    PeriodVector,
    fiber_shape,
    genus_two_regions,
    image_polytope,
    local_fiber,
    period_matrix,
    project,
)
from .polytope import Polyhedron, Polytope, Vector, order_ccw

logger = logging.getLogger(__name__)

Point2 = tuple[Fraction, Fraction]


class PieceKind(str, Enum):
    INNER = "inner"
    OUTER = "outer"
    UNBOUNDED = "unbounded"


@dataclass(frozen=True)
class Piece:
    """A boundary segment of a patch with a constant degeneration pattern.

    ``start``/``end`` are in the patch chart; for inner pieces ``canonical`` holds
    the same endpoints in canonical weights of the subordinate graph ``key``.
    """

    kind: PieceKind
    side: int
    start: Point2
    end: Point2
    key: str | None = None
    canonical: tuple[Vector, Vector] | None = None


@dataclass(frozen=True)
class Patch:
    graph: str
    word: BraidWord
    target: PeriodVector
    stratum: str
    dimension: int
    vertices: tuple[Vector, ...]
    polygon: tuple[Point2, ...] = ()
    pieces: tuple[Piece, ...] = ()
    shape: str = ""
    identity: tuple[Fraction, ...] = field(default=(), compare=False, repr=False)
    source: PlanarTree | None = field(default=None, compare=False, repr=False)

    def ambient(self, point: Point2) -> Vector:
        """Source coordinates of a boundary point given in the patch chart."""
        n = len(self.polygon)
        for side in range(n):
            t = _between(point, self.polygon[side], self.polygon[(side + 1) % n])
            if t is not None:
                return _point(self.vertices[side], t, self.vertices[(side + 1) % n])
        raise ValueError(f"Point {point} is not on the boundary of the patch")


@dataclass(frozen=True)
class Carving:
    genus: int
    ovals: int
    target: PeriodVector
    orbit: Orbit
    patches: tuple[Patch, ...]
    sieved: tuple[BraidWord, ...]


@dataclass(frozen=True)
class Gluing:
    """Two boundary segments identified start to start and end to end."""

    key: str
    left: int
    right: int
    left_segment: tuple[Point2, Point2]
    right_segment: tuple[Point2, Point2]


@dataclass(frozen=True)
class FiberComplex:
    patches: tuple[Patch, ...]
    gluings: tuple[Gluing, ...]
    overlaps: tuple[str, ...] = ()


@dataclass(frozen=True)
class TopologyReport:
    components: int
    euler_characteristics: tuple[int, ...]
    is_cell: bool
    dual_tree: bool
    patches: int
    gluings: int
    unbounded_sides: int
    outer_sides: int
    multiplicity_ok: bool
    collapsible: bool
    shapes: tuple[str, ...] = ()
    sieved: tuple[BraidWord, ...] = ()
    exhaustive: bool = True

    def to_dict(self) -> dict[str, Any]:
        return {
            "components": self.components,
            "chi": list(self.euler_characteristics),
            "is_cell": self.is_cell,
            "dual_tree": self.dual_tree,
            "patches": self.patches,
            "gluings": self.gluings,
            "unbounded_sides": self.unbounded_sides,
            "outer_sides": self.outer_sides,
            "multiplicity_ok": self.multiplicity_ok,
            "collapsible": self.collapsible,
            "shapes": list(self.shapes),
            "sieved": [list(w) for w in self.sieved],
            "exhaustive": self.exhaustive,
        }


# --------------- Carving ---------------


def _check_supported(genus: int, ovals: int) -> None:
    if genus > 3 or genus < 1 or not 1 <= ovals <= genus + 1:
        raise UnsupportedError(
            f"Fibers are carved for g <= 3 only, got (g, k) = ({genus}, {ovals})"
        )


def _point(x: Vector, t: Fraction, y: Vector) -> Vector:
    return tuple(a + t * (b - a) for a, b in zip(x, y, strict=True))


def _lerp2(p: Point2, q: Point2, t: Fraction) -> Point2:
    return (p[0] + t * (q[0] - p[0]), p[1] + t * (q[1] - p[1]))


def _reduced_identity(fiber: LocalFiber, x: Vector) -> tuple[str, tuple[Fraction, ...]]:
    """Subordinate graph and its canonical weights at a point; raises on outer faces."""
    reduced = reduce(fiber.tree, fiber.weights(x))
    return canonical_form(reduced.tree), canonical_weights(reduced.tree, reduced.weights)


def _split_points(x0: Vector, x1: Vector, m: int) -> list[Fraction]:
    """Parameters in ``(0, 1)`` where two widths, or a width and zero, coincide."""
    w0 = [Fraction(0), *x0[m:]]
    w1 = [Fraction(0), *x1[m:]]
    cuts: set[Fraction] = set()
    for a, b in combinations(range(len(w0)), 2):
        gap0 = w0[a] - w0[b]
        slope = (w1[a] - w1[b]) - gap0
        if slope == 0:
            continue
        t = -gap0 / slope
        if 0 < t < 1:
            cuts.add(t)
    return sorted(cuts)


def _pieces(
    fiber: LocalFiber,
    poly: Polyhedron,
    vertices: Sequence[Vector],
    polygon: Sequence[Point2],
    truncation: frozenset[int],
) -> tuple[list[Piece], list[bool]]:
    m = len(fiber.columns)
    pieces: list[Piece] = []
    unbounded: list[bool] = []
    n = len(vertices)
    for side in range(n):
        x0, x1 = vertices[side], vertices[(side + 1) % n]
        p0, p1 = polygon[side], polygon[(side + 1) % n]
        tight = poly.tight(x0) & poly.tight(x1)
        if tight & truncation:
            unbounded.append(True)
            pieces.append(Piece(PieceKind.UNBOUNDED, side, p0, p1))
            continue
        unbounded.append(False)
        cuts = [Fraction(0), *_split_points(x0, x1, m), Fraction(1)]
        for t0, t1 in zip(cuts, cuts[1:], strict=False):
            a = _point(x0, t0 + (t1 - t0) / 3, x1)
            b = _point(x0, t0 + 2 * (t1 - t0) / 3, x1)
            start, end = _lerp2(p0, p1, t0), _lerp2(p0, p1, t1)
            try:
                key_a, ya = _reduced_identity(fiber, a)
                key_b, yb = _reduced_identity(fiber, b)
            except OuterFaceError:
                pieces.append(Piece(PieceKind.OUTER, side, start, end))
                continue
            if key_a != key_b or len(ya) != len(yb):
                logger.debug("piece on side %d changes pattern: %s vs %s", side, key_a, key_b)
                pieces.append(Piece(PieceKind.INNER, side, start, end, key_a))
                continue
            y0 = tuple(2 * u - v for u, v in zip(ya, yb, strict=True))
            y1 = tuple(2 * v - u for u, v in zip(ya, yb, strict=True))
            pieces.append(Piece(PieceKind.INNER, side, start, end, key_a, (y0, y1)))
    return pieces, unbounded


def carve_patch(
    tree: PlanarTree, point: OrbitPoint, settings: Settings
) -> Patch | None:
    """Patch cut out of the closed coordinate space of ``tree`` over ``point.image``.

    ``None`` when the local fiber has dimension below ``g`` or lies on an outer face.
    """
    genus, _ = invariants(tree)
    try:
        fiber = local_fiber(tree, point.image)
    except TargetOutsideImageError:
        return None
    poly = fiber.truncated(settings.truncation)
    if poly.dimension != genus:
        return None
    centre = poly.barycentre()
    try:
        stratum, identity = _reduced_identity(fiber, centre)
    except OuterFaceError:
        return None
    graph = canonical_form(tree)
    if genus != 2:
        return Patch(
            graph, point.word, point.image, stratum, genus, poly.vertices, identity=identity,
            source=tree,
        )

    chart = poly.chart
    assert chart is not None
    local = [chart.coordinates(v) for v in poly.vertices]
    order = order_ccw([(y[0], y[1]) for y in local])
    vertices = tuple(poly.vertices[i] for i in order)
    polygon = tuple((local[i][0], local[i][1]) for i in order)
    f = len(fiber.free)
    total = len(poly.inequalities)
    truncation = frozenset(range(total - f, total))
    pieces, unbounded = _pieces(fiber, poly, vertices, polygon, truncation)
    shape = fiber_shape(polygon, unbounded, vertices)
    return Patch(
        graph, point.word, point.image, stratum, genus, vertices, polygon, tuple(pieces), shape,
        identity,
        source=tree,
    )


def canonical_region(genus: int, ovals: int) -> list[Polytope]:
    """Images of the full-dimensional cells, in projected period coordinates."""
    return [image_polytope(t) for t in full_dim_catalog(genus, ovals)]


def _cells(
    genus: int, ovals: int, catalog: Sequence[PlanarTree] | None
) -> tuple[list[PlanarTree], list[Polytope]]:
    cells = list(catalog) if catalog is not None else list(full_dim_catalog(genus, ovals))
    return cells, [image_polytope(t) for t in cells]


def fiber_orbit(
    genus: int,
    ovals: int,
    target: PeriodVector,
    settings: Settings | None = None,
    catalog: Sequence[PlanarTree] | None = None,
) -> Orbit:
    """Braid images of ``target`` inside the canonical region of ``(genus, ovals)``."""
    _check_supported(genus, ovals)
    if len(target) != genus + 1:
        raise UnsupportedError(
            f"Target has {len(target)} components, genus {genus} needs {genus + 1}"
        )
    if target.total != 2:
        raise TargetOutsideImageError(f"Periods must sum to 2, got {target.total}")
    _, images = _cells(genus, ovals, catalog)
    if not any(p.contains(project(target.values, genus, ovals)) for p in images):
        raise TargetOutsideImageError(
            f"Target {[str(x) for x in target]} lies outside the canonical region"
        )
    return orbit_in_region(target, images, genus, ovals, settings)


def carve_orbit(
    genus: int,
    ovals: int,
    target: PeriodVector,
    orbit: Orbit,
    settings: Settings | None = None,
    catalog: Sequence[PlanarTree] | None = None,
) -> Carving:
    """Patches over every orbit point; braids leaving no patch are reported as sieved."""
    settings = settings or Settings()
    _check_supported(genus, ovals)
    cells, images = _cells(genus, ovals, catalog)
    tasks = [
        (tree, point)
        for point in orbit.points
        for tree, image in zip(cells, images, strict=True)
        if image.contains(project(point.image.values, genus, ovals))
    ]
    if settings.threads > 1:
        with ThreadPoolExecutor(max_workers=settings.threads) as pool:
            results = list(pool.map(lambda job: carve_patch(job[0], job[1], settings), tasks))
    else:
        results = [carve_patch(tree, point, settings) for tree, point in tasks]

    unique: dict[tuple[BraidWord, str, tuple[Fraction, ...]], Patch] = {}
    for patch in results:
        if patch is not None:
            unique.setdefault((patch.word, patch.stratum, patch.identity), patch)
    patches = tuple(
        sorted(unique.values(), key=lambda p: (len(p.word), p.word, p.graph, p.stratum))
    )
    used = {p.word for p in patches}
    sieved = tuple(p.word for p in orbit.points if p.word not in used)
    logger.debug(
        "carved %d patch(es) from %d task(s), %d braid(s) sieved",
        len(patches),
        len(tasks),
        len(sieved),
    )
    return Carving(genus, ovals, target, orbit, patches, sieved)


def carve(
    genus: int,
    ovals: int,
    target: PeriodVector,
    settings: Settings | None = None,
    catalog: Sequence[PlanarTree] | None = None,
) -> Carving:
    orbit = fiber_orbit(genus, ovals, target, settings, catalog)
    return carve_orbit(genus, ovals, target, orbit, settings, catalog)


# --------------- Gluing ---------------


def _pivot(direction: Vector) -> int | None:
    return next((i for i, d in enumerate(direction) if d != 0), None)


def _on_line(base: Vector, direction: Vector, pivot: int, y: Vector) -> Fraction | None:
    lam = (y[pivot] - base[pivot]) / direction[pivot]
    if all(b + lam * d == c for b, d, c in zip(base, direction, y, strict=True)):
        return lam
    return None


@dataclass
class _Line:
    base: Vector
    direction: Vector
    pivot: int
    members: list[tuple[int, Piece, Fraction, Fraction]] = field(default_factory=list)


def _between(p: Point2, a: Point2, b: Point2) -> Fraction | None:
    """Parameter of ``p`` on the segment ``ab`` or ``None`` if off it."""
    dx, dy = b[0] - a[0], b[1] - a[1]
    if dx * (p[1] - a[1]) - dy * (p[0] - a[0]) != 0:
        return None
    t = (p[0] - a[0]) / dx if dx != 0 else (p[1] - a[1]) / dy
    return t if 0 <= t <= 1 else None


def inherited_rows(patch: Patch, point: Point2) -> sp.Matrix:
    """Period coefficients the source graph hands to the subordinate graph at ``point``.

    Column ``j`` belongs to the ``j``-th vertical column of the subordinate graph in
    canonical order; the entries are the source coefficients of the edge it came from.
    """
    tree = patch.source
    if tree is None:
        raise UnsupportedError("Patch carries no source graph")
    x = patch.ambient(point)
    m = len(tree.vertical_columns)
    weights = WeightAssignment.symmetric(
        tree,
        dict(zip(tree.vertical_columns, x[:m], strict=True)),
        dict(zip(tree.free_vertices, x[m:], strict=True)),
    )
    reduced = reduce(tree, weights)
    columns = set(reduced.tree.vertical_columns)
    matrix = period_matrix(tree)
    origins = []
    for e in canonical_labels(reduced.tree).edges:
        if e not in columns:
            continue
        origin = reduced.edge_origin[e]
        if not tree.in_closed_upper(origin):
            origin = tree.edge_mirror[origin]
        origins.append(origin)
    return sp.Matrix(
        [[matrix.coefficient(s, e) for e in origins] for s in range(len(matrix.rows))]
    )


def braid_labels_agree(patches: Sequence[Patch], gluing: Gluing) -> bool:
    """Both sides of a gluing pull the subordinate periods back to the same target map.

    Patch ``i`` sees the target through ``A(w_i)``, so its subordinate coefficients
    in the frame of the target are ``A(w_i)^-1`` times the inherited rows.
    """
    left, right = patches[gluing.left], patches[gluing.right]
    assert left.source is not None
    genus, ovals = invariants(left.source)

    def pulled_back(patch: Patch, segment: tuple[Point2, Point2]) -> sp.Matrix:
        mid = _lerp2(segment[0], segment[1], Fraction(1, 2))
        return burau(inverse(patch.word), genus, ovals) * inherited_rows(patch, mid)

    return bool(
        pulled_back(left, gluing.left_segment) == pulled_back(right, gluing.right_segment)
    )


def _local_at(piece: Piece, t0: Fraction, t1: Fraction, tau: Fraction) -> Point2:
    return _lerp2(piece.start, piece.end, (tau - t0) / (t1 - t0))


def _unmatched(
    patches: Sequence[Patch], i: int, key: str, start: Point2, end: Point2, reason: str
) -> dict[str, Any]:
    return {
        "patch": i,
        "graph": patches[i].graph,
        "word": list(patches[i].word),
        "key": key,
        "start": [str(c) for c in start],
        "end": [str(c) for c in end],
        "reason": reason,
    }


def glue(patches: Sequence[Patch], fixed: bool = False) -> FiberComplex:
    """Identify inner pieces labelled by the same subordinate graph, segment by segment.

    With ``fixed`` the target is fixed by the braid action, so matching weights no
    longer pin the gluing and every pair must also carry the same braid label.
    """
    if any(p.dimension != 2 for p in patches):
        raise UnsupportedError("Gluing is implemented for two-dimensional patches only")
    groups: dict[str, list[tuple[int, Piece]]] = defaultdict(list)
    for i, patch in enumerate(patches):
        for piece in patch.pieces:
            if piece.kind is PieceKind.INNER and piece.key is not None:
                groups[piece.key].append((i, piece))

    gluings: list[Gluing] = []
    unmatched: list[dict[str, Any]] = []
    overlaps: list[str] = []
    for key in sorted(groups):
        lines: list[_Line] = []
        for i, piece in groups[key]:
            if piece.canonical is None:
                unmatched.append(
                    _unmatched(patches, i, key, piece.start, piece.end, "pattern changes inside")
                )
                continue
            y0, y1 = piece.canonical
            direction = tuple(b - a for a, b in zip(y0, y1, strict=True))
            pivot = _pivot(direction)
            if pivot is None:
                unmatched.append(
                    _unmatched(patches, i, key, piece.start, piece.end, "collapses to a point")
                )
                continue
            for line in lines:
                t0 = _on_line(line.base, line.direction, line.pivot, y0)
                t1 = _on_line(line.base, line.direction, line.pivot, y1)
                if t0 is not None and t1 is not None:
                    line.members.append((i, piece, t0, t1))
                    break
            else:
                line = _Line(y0, direction, pivot)
                line.members.append((i, piece, Fraction(0), Fraction(1)))
                lines.append(line)

        for line in lines:
            cuts = sorted({t for _, _, a, b in line.members for t in (a, b)})
            for u, w in zip(cuts, cuts[1:], strict=False):
                cover = [
                    (i, piece, a, b)
                    for i, piece, a, b in line.members
                    if min(a, b) <= u and w <= max(a, b)
                ]
                if len(cover) == 2:
                    (i, pa, a0, a1), (j, pb, b0, b1) = cover
                    gluings.append(
                        Gluing(
                            key,
                            i,
                            j,
                            (_local_at(pa, a0, a1, u), _local_at(pa, a0, a1, w)),
                            (_local_at(pb, b0, b1, u), _local_at(pb, b0, b1, w)),
                        )
                    )
                elif len(cover) == 1:
                    i, piece, a0, a1 = cover[0]
                    unmatched.append(
                        _unmatched(
                            patches,
                            i,
                            key,
                            _local_at(piece, a0, a1, u),
                            _local_at(piece, a0, a1, w),
                            "no partner",
                        )
                    )
                elif len(cover) > 2:
                    overlaps.append(key)
    if fixed:
        for g in gluings:
            if not braid_labels_agree(patches, g):
                unmatched.append(
                    _unmatched(patches, g.left, g.key, *g.left_segment, "braid labels disagree")
                )
    if unmatched:
        raise AssemblyIncompleteError(unmatched)
    logger.debug("glued %d segment pair(s), %d overlap(s)", len(gluings), len(overlaps))
    return FiberComplex(tuple(patches), tuple(gluings), tuple(sorted(set(overlaps))))


# --------------- Topology ---------------


def _boundary_marks(patch: Patch, extra: Iterable[Point2]) -> list[Point2]:
    """Cyclic boundary of a patch with every extra mark inserted on its side."""
    poly = patch.polygon
    n = len(poly)
    pending = set(extra)
    for piece in patch.pieces:
        pending.update((piece.start, piece.end))
    marks: list[Point2] = []
    for side in range(n):
        a, b = poly[side], poly[(side + 1) % n]
        on_side = []
        for p in pending:
            t = _between(p, a, b)
            if t is not None and t < 1:
                on_side.append((t, p))
        marks.extend(p for _, p in sorted(on_side))
    out: list[Point2] = []
    for p in marks:
        if p not in out:
            out.append(p)
    return out


def topology(complex_: FiberComplex, carving: Carving | None = None) -> TopologyReport:
    """Connectivity, Euler characteristic and cell verdict of a glued complex."""
    patches = complex_.patches
    extra: dict[int, set[Point2]] = defaultdict(set)
    for g in complex_.gluings:
        extra[g.left].update(g.left_segment)
        extra[g.right].update(g.right_segment)

    vertices = nx.utils.UnionFind()
    edges = nx.utils.UnionFind()
    vertex_ids: list[tuple[int, Point2]] = []
    faces: list[list[tuple[Any, ...]]] = []
    free_kinds: Counter[PieceKind] = Counter()
    for i, patch in enumerate(patches):
        marks = _boundary_marks(patch, extra[i])
        boundary = []
        for j, p in enumerate(marks):
            q = marks[(j + 1) % len(marks)]
            vertex_ids.append((i, p))
            boundary.append((i, p, q) if p <= q else (i, q, p))
        faces.append(boundary)
        for piece in patch.pieces:
            if piece.kind is not PieceKind.INNER:
                free_kinds[piece.kind] += 1
    for g in complex_.gluings:
        (a, b), (c, d) = g.left_segment, g.right_segment
        vertices.union((g.left, a), (g.right, c))
        vertices.union((g.left, b), (g.right, d))
        left = (g.left, a, b) if a <= b else (g.left, b, a)
        right = (g.right, c, d) if c <= d else (g.right, d, c)
        edges.union(left, right)

    def ends(edge: tuple[Any, ...]) -> tuple[Any, Any]:
        i, p, q = edge
        return vertices[(i, p)], vertices[(i, q)]

    incidence: Counter[Any] = Counter(edges[e] for face in faces for e in face)
    multiplicity_ok = not complex_.overlaps and all(n <= 2 for n in incidence.values())

    skeleton = nx.MultiGraph()
    skeleton.add_nodes_from({vertices[v] for v in vertex_ids})
    seen_edges: set[Any] = set()
    for face in faces:
        for e in face:
            root = edges[e]
            if root not in seen_edges:
                seen_edges.add(root)
                skeleton.add_edge(*ends(e), key=root)
    components = list(nx.connected_components(skeleton))
    face_component = [
        next(k for k, comp in enumerate(components) if ends(face[0])[0] in comp) for face in faces
    ]
    chis = []
    for k, comp in enumerate(components):
        sub = skeleton.subgraph(comp)
        n_edges = sub.number_of_edges()
        n_faces = sum(1 for c in face_component if c == k)
        chis.append(len(comp) - n_edges + n_faces)

    remaining = set(range(len(faces)))
    live = Counter(incidence)
    removed: set[Any] = set()
    progress = True
    while progress:
        progress = False
        for f in sorted(remaining):
            free = [edges[e] for e in faces[f] if live[edges[e]] == 1 and edges[e] not in removed]
            if free:
                remaining.discard(f)
                for e in faces[f]:
                    live[edges[e]] -= 1
                removed.add(free[0])
                progress = True
                break
    collapsible = not remaining
    rest = nx.MultiGraph()
    rest.add_nodes_from(skeleton.nodes)
    for u, v, key in skeleton.edges(keys=True):
        if key not in removed:
            rest.add_edge(u, v, key=key)
    tree_like = collapsible and rest.number_of_nodes() > 0 and nx.is_tree(rest)

    dual = nx.Graph()
    dual.add_nodes_from(range(len(patches)))
    dual.add_edges_from((g.left, g.right) for g in complex_.gluings if g.left != g.right)
    dual_tree = bool(patches) and nx.is_tree(dual)

    is_cell = len(components) == 1 and chis == [1] and multiplicity_ok and tree_like
    return TopologyReport(
        components=len(components),
        euler_characteristics=tuple(chis),
        is_cell=is_cell,
        dual_tree=dual_tree,
        patches=len(patches),
        gluings=len(complex_.gluings),
        unbounded_sides=free_kinds[PieceKind.UNBOUNDED],
        outer_sides=free_kinds[PieceKind.OUTER],
        multiplicity_ok=multiplicity_ok,
        collapsible=collapsible,
        shapes=tuple(p.shape for p in patches),
        sieved=carving.sieved if carving else (),
        exhaustive=carving.orbit.exhaustive if carving else True,
    )


def braid_fixed(genus: int, ovals: int, target: PeriodVector) -> bool:
    """True when the target is fixed by a nontrivial braid action."""
    return strands(genus, ovals) > 1 and is_fixed(target, ovals)


def fiber_report(
    genus: int, ovals: int, target: PeriodVector, settings: Settings | None = None
) -> tuple[Carving, FiberComplex, TopologyReport]:
    carving = carve(genus, ovals, target, settings)
    complex_ = glue(carving.patches, braid_fixed(genus, ovals, target))
    return carving, complex_, topology(complex_, carving)


# --------------- Plotting and sampling ---------------


def format_word(word: Sequence[int]) -> str:
    return " ".join(str(x) for x in word) if word else "e"


def plot_rows(complex_: FiberComplex) -> list[list[str]]:
    """CSV rows ``patch,graph,braid,index,x,y`` in each patch's own chart."""
    rows = [["patch", "graph", "braid", "index", "x", "y"]]
    for i, patch in enumerate(complex_.patches):
        for j, (x, y) in enumerate(patch.polygon):
            rows.append([str(i), patch.graph, format_word(patch.word), str(j), str(x), str(y)])
    return rows


def genus_two_interfaces(ovals: int) -> dict[str, tuple[Vector, Vector]]:
    """Shared sides of neighbouring regions, named ``"a|b"``."""
    regions = genus_two_regions(ovals)
    out = {}
    for (na, ra), (nb, rb) in combinations(regions.items(), 2):
        shared = sorted(set(ra.vertices) & set(rb.vertices))
        if len(shared) == 2:
            out[f"{na}|{nb}"] = (shared[0], shared[1])
    return out


def _generic(point: Vector, ovals: int) -> bool:
    # The Br_2 fixed line Pi_1 + Pi_2 = 0 in the k = 1 chart.
    return ovals != 1 or point[0] + point[1] != 0


def sample_targets(
    ovals: int, region: str, count: int, rng: random.Random
) -> list[Vector]:
    """Random rational points inside a named region or on a named interface."""
    if "|" in region:
        interfaces = genus_two_interfaces(ovals)
        if region not in interfaces:
            raise UnsupportedError(f"No interface {region!r} for k={ovals}")
        corners: Sequence[Vector] = interfaces[region]
    else:
        regions = genus_two_regions(ovals)
        if region not in regions:
            raise UnsupportedError(f"No region {region!r} for k={ovals}")
        corners = regions[region].vertices
    out: list[Vector] = []
    seen: set[Vector] = set()
    while len(out) < count:
        raw = [Fraction(rng.randint(1, 23)) for _ in corners]
        total = sum(raw, Fraction(0))
        point = tuple(
            sum((r / total * c[i] for r, c in zip(raw, corners, strict=True)), Fraction(0))
            for i in range(2)
        )
        if point in seen or not _generic(point, ovals):
            continue
        seen.add(point)
        out.append(point)
    return out
