"""Elimination of zero-weight edges and the face lattice of a coordinate space.

Zero horizontal edges are contracted; zero vertical edges are zipped on the
extended graph, where every vertex carries outgoing rays to infinity so that
each face is a half-strip.  Zipping collapses the two half-strips along the
vertical edge by sewing their side chains together level by level.
"""

from __future__ import annotations

import logging
import random
from collections.abc import Iterable
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from itertools import pairwise
from typing import NamedTuple

import networkx as nx

from .errors import MalformedGraphError, OuterFaceError, PreconditionError
from .graph import (
    Edge,
    EdgeKind,
    Half,
    PlanarTree,
    WeightAssignment,
    canonical_form,
    is_branchpoint,
    rotate_to,
)

logger = logging.getLogger(__name__)

_RAY_LEVEL = (1, Fraction(0))


class Reduction(NamedTuple):
    """Outcome of a degeneration.

    ``members[v]`` lists the input vertices merged into output vertex ``v`` and
    ``edge_origin[e]`` names the input edge that output edge ``e`` came from.
    """

    tree: PlanarTree
    weights: WeightAssignment
    members: tuple[frozenset[int], ...]
    edge_origin: tuple[int, ...]
    trace: tuple[int, ...] = ()


@dataclass(frozen=True)
class Strip:
    """One half-strip: the vertical edge and its two ascending side chains."""

    vertical: int
    first_side: tuple[int, ...]
    second_side: tuple[int, ...]


class ExtendedGraph:
    """Mutable working copy of a weighted tree with rays to infinity.

    Vertex and edge ids are those of the source tree; rays get fresh ids.
    ``members`` tracks which source vertices each working vertex absorbed.
    """

    def __init__(self, tree: PlanarTree, weights: WeightAssignment) -> None:
        self.source = tree
        self.rotation: dict[int, list[int]] = {v: list(tree.rotation[v]) for v in tree.vertices}
        self.ends: dict[int, list[int | None]] = {e.id: list(e.ends) for e in tree.edges}
        self.vertical: dict[int, bool] = {e.id: e.is_vertical for e in tree.edges}
        self.heights: dict[int, Fraction] = {}
        for e in tree.edges:
            if e.is_vertical:
                if e.id not in weights.heights:
                    raise MalformedGraphError(f"Missing vertical weight for edge {e.id}")
                self.heights[e.id] = Fraction(weights.heights[e.id])
        self.widths: dict[int, Fraction] = {
            v: Fraction(weights.widths.get(v, 0)) for v in tree.vertices
        }
        self.members: dict[int, set[int]] = {v: {v} for v in tree.vertices}
        self.branch: dict[int, int] = {v: int(is_branchpoint(tree, v)) for v in tree.vertices}
        self.rays: set[int] = set()
        self._next_id = len(tree.edges)
        for v in tree.vertices:
            self.rotation[v] = self._with_rays(v)

    # --------------- Construction ---------------

    def _outgoing(self, v: int, e: int) -> bool:
        return not self.vertical[e] and self.ends[e][0] == v

    def _with_rays(self, v: int) -> list[int]:
        """Rotation at v with a ray after every non-outgoing end not followed by an outgoing one."""
        rot = self.rotation[v]
        out: list[int] = []
        for i, e in enumerate(rot):
            out.append(e)
            if self._outgoing(v, e):
                continue
            if not self._outgoing(v, rot[(i + 1) % len(rot)]):
                out.append(self._new_ray(v))
        return out

    def _new_ray(self, v: int) -> int:
        r = self._next_id
        self._next_id += 1
        self.ends[r] = [v, None]
        self.vertical[r] = False
        self.rays.add(r)
        return r

    # --------------- Local navigation ---------------

    def other(self, e: int, v: int) -> int | None:
        a, b = self.ends[e]
        return b if a == v else a

    def level(self, v: int | None) -> tuple[int, Fraction]:
        return _RAY_LEVEL if v is None else (0, self.widths[v])

    def next_ccw(self, v: int, e: int) -> int:
        rot = self.rotation[v]
        return rot[(rot.index(e) + 1) % len(rot)]

    def prev_ccw(self, v: int, e: int) -> int:
        rot = self.rotation[v]
        return rot[(rot.index(e) - 1) % len(rot)]

    def edge_count(self) -> int:
        return len(self.ends) - len(self.rays)

    def zero_edges(self) -> tuple[list[int], list[int]]:
        horizontal, vertical = [], []
        for e in sorted(self.ends):
            if e in self.rays:
                continue
            if self.vertical[e]:
                if self.heights[e] == 0:
                    vertical.append(e)
            else:
                tail, head = self.ends[e]
                if tail is not None and head is not None and self.widths[tail] == self.widths[head]:
                    horizontal.append(e)
        return horizontal, vertical

    # --------------- Primitive mutations ---------------

    def _drop_edge(self, e: int) -> None:
        for x in self.ends.pop(e):
            if x is not None and e in self.rotation.get(x, ()):
                self.rotation[x].remove(e)
        self.heights.pop(e, None)
        self.rays.discard(e)

    def _merge(self, keep: int, drop: int, rotation: list[int]) -> None:
        for e in self.rotation[drop]:
            if e in self.ends:
                self.ends[e] = [keep if x == drop else x for x in self.ends[e]]
        for e in rotation:
            self.ends[e] = [keep if x == drop else x for x in self.ends[e]]
        self.rotation[keep] = rotation
        del self.rotation[drop]
        del self.widths[drop]
        self.members[keep] |= self.members.pop(drop)
        self.branch[keep] += self.branch.pop(drop)
        if self.branch[keep] >= 2:
            raise OuterFaceError(
                f"Degeneration merges {self.branch[keep]} branchpoints", self.members[keep]
            )

    def _reattach(self, e: int, frm: int, to: int, after: int) -> None:
        """Move the ``frm`` end of ``e`` to ``to``, right after the end ``after``."""
        self.rotation[frm].remove(e)
        self.ends[e] = [to if x == frm else x for x in self.ends[e]]
        rot = self.rotation[to]
        rot.insert(rot.index(after) + 1, e)

    # --------------- Contraction ---------------

    def contract_edge(self, e: int) -> None:
        if e not in self.ends or e in self.rays or self.vertical[e]:
            raise PreconditionError(f"Edge {e} is not a horizontal edge of the graph")
        a, b = self.ends[e]
        assert a is not None and b is not None
        if self.widths[a] != self.widths[b]:
            raise PreconditionError(f"Edge {e} has a nonzero width increment")
        after_a = rotate_to(self.rotation[a], e)[1:]
        after_b = rotate_to(self.rotation[b], e)[1:]
        self._drop_edge(e)
        keep, drop = min(a, b), max(a, b)
        logger.debug("contract %d: merge %d into %d", e, drop, keep)
        self._merge(keep, drop, after_a + after_b)

    # --------------- Zipping ---------------

    def side_chain(self, start: int, first: int, forward: bool) -> list[int]:
        """Edges of a strip side from ``start`` up to (excluding) its ray."""
        chain: list[int] = []
        v: int | None = start
        e = first
        while e not in self.rays and v is not None:
            chain.append(e)
            v = self.other(e, v)
            if v is None:
                break
            e = self.next_ccw(v, e) if forward else self.prev_ccw(v, e)
        return chain

    def _chain_vertices(self, start: int, chain: Iterable[int]) -> tuple[int, ...]:
        out = [start]
        for e in chain:
            nxt = self.other(e, out[-1])
            if nxt is None:
                break
            out.append(nxt)
        return tuple(out)

    def strips(self, r: int) -> tuple[Strip, Strip]:
        if r not in self.ends or not self.vertical[r]:
            raise PreconditionError(f"Edge {r} is not a vertical edge of the graph")
        a, b = self.ends[r]
        assert a is not None and b is not None
        sides = (
            (self.side_chain(a, self.next_ccw(a, r), True), self.side_chain(b, self.prev_ccw(b, r), False)),
            (self.side_chain(b, self.next_ccw(b, r), True), self.side_chain(a, self.prev_ccw(a, r), False)),
        )
        left = Strip(r, self._chain_vertices(a, sides[0][0]), self._chain_vertices(b, sides[0][1]))
        right = Strip(r, self._chain_vertices(b, sides[1][0]), self._chain_vertices(a, sides[1][1]))
        return left, right

    def _contract_strip_sides(self, r: int) -> None:
        while True:
            a, b = self.ends[r]
            assert a is not None and b is not None
            chains = [
                (a, self.side_chain(a, self.next_ccw(a, r), True)),
                (b, self.side_chain(b, self.prev_ccw(b, r), False)),
                (b, self.side_chain(b, self.next_ccw(b, r), True)),
                (a, self.side_chain(a, self.prev_ccw(a, r), False)),
            ]
            zero = None
            for start, chain in chains:
                verts = self._chain_vertices(start, chain)
                for e, (x, y) in zip(chain, pairwise(verts), strict=False):
                    if self.widths[x] == self.widths[y]:
                        zero = e
                        break
                if zero is not None:
                    break
            if zero is None:
                return
            self.contract_edge(zero)

    def zip_edge(self, r: int) -> None:
        if r not in self.ends or not self.vertical[r]:
            raise PreconditionError(f"Edge {r} is not a vertical edge of the graph")
        if self.heights[r] != 0:
            raise PreconditionError(f"Edge {r} has nonzero weight {self.heights[r]}")
        self._contract_strip_sides(r)
        a, b = self.ends[r]
        assert a is not None and b is not None
        after_a = rotate_to(self.rotation[a], r)[1:]
        after_b = rotate_to(self.rotation[b], r)[1:]
        self._drop_edge(r)
        logger.debug("zip %d: merge %d into %d", r, b, a)
        self._merge(a, b, after_a + after_b)
        if not after_a or not after_b:
            return
        a1, ap = after_a[0], after_a[-1]
        b1, bq = after_b[0], after_b[-1]
        survivor = self._sew(a, bq, a1)
        ep = ap if ap in self.rotation[a] else survivor
        en = b1 if b1 in self.rotation[a] else survivor
        if ep != en:
            self._sew(a, ep, en)

    def _sew(self, c: int, ep: int, en: int) -> int:
        """Identify the two chains of the wedge from ``ep`` ccw to ``en`` at ``c``.

        Returns the end at ``c`` that survives the first step.
        """
        survivor: int | None = None
        while True:
            u, v = self.other(ep, c), self.other(en, c)
            if u is None and v is None:
                self._drop_edge(en)
                return ep if survivor is None else survivor
            lu, lv = self.level(u), self.level(v)
            if lu == lv:
                assert u is not None and v is not None
                pu, nv = self.prev_ccw(u, ep), self.next_ccw(v, en)
                merged = rotate_to(self.rotation[u], ep) + rotate_to(self.rotation[v], en)[1:]
                self._drop_edge(en)
                self._merge(u, v, merged)
                survivor = ep if survivor is None else survivor
                c, ep, en = u, pu, nv
            elif lu < lv:
                assert u is not None
                pu = self.prev_ccw(u, ep)
                self._reattach(en, c, u, pu)
                survivor = ep if survivor is None else survivor
                c, ep = u, pu
            else:
                assert v is not None
                nv = self.next_ccw(v, en)
                self._reattach(ep, c, v, en)
                survivor = en if survivor is None else survivor
                c, en = v, nv

    # --------------- Rebuild ---------------

    def _axis_walk(self, real: list[int], halves: dict[int, Half]) -> list[int]:
        """Real working vertices in axis order, walking the real edges from one end.

        The direction is read off the rotation: ccw after the right axis edge
        comes the upper half. Source axis positions break the tie when no real
        vertex has an off-axis neighbour.
        """
        if len(real) <= 1:
            return real
        on_axis = set(real)
        links: dict[int, dict[int, int]] = {w: {} for w in real}
        for e, (x, y) in self.ends.items():
            if x is None or y is None or x not in on_axis or y not in on_axis:
                continue
            links[x][y] = e
            links[y][x] = e
        ends = [w for w in real if len(links[w]) == 1]
        if len(ends) != 2 or any(len(n) > 2 for n in links.values()):
            raise MalformedGraphError("Real vertices do not form a path")
        walk = [min(ends)]
        while len(walk) < len(real):
            step = [y for y in links[walk[-1]] if len(walk) < 2 or y != walk[-2]]
            if not step:
                raise MalformedGraphError("Real vertices do not form a path")
            walk.append(step[0])

        for here, there in pairwise(walk):
            for e in rotate_to(self.rotation[here], links[here][there])[1:]:
                x = self.other(e, here)
                if e in self.rays or x is None or x in on_axis:
                    continue
                return walk if halves[x] is Half.UPPER else walk[::-1]

        src = self.source

        def position(w: int) -> int:
            return min(
                (src.axis_index[m] for m in self.members[w] if src.halves[m] is Half.REAL),
                default=len(src.axis),
            )

        return walk if position(walk[0]) <= position(walk[-1]) else walk[::-1]

    def result(self) -> Reduction:
        src = self.source
        alive = sorted(self.rotation)
        owner = {m: w for w in alive for m in self.members[w]}
        sigma_v: dict[int, int] = {}
        for w in alive:
            images = {owner[src.vertex_mirror[m]] for m in self.members[w]}
            if len(images) != 1:
                raise MalformedGraphError(f"Working vertex {w} lost its mirror image")
            sigma_v[w] = images.pop()
        vid = {w: i for i, w in enumerate(alive)}
        edges_alive = sorted(e for e in self.ends if e not in self.rays)
        eid = {e: i for i, e in enumerate(edges_alive)}
        by_ends = {frozenset(self.ends[e]): e for e in edges_alive}

        halves: list[Half] = []
        for w in alive:
            if sigma_v[w] == w:
                halves.append(Half.REAL)
            else:
                halves.append(src.halves[min(self.members[w])])
        edges: list[Edge] = []
        emirror: list[int] = []
        heights: dict[int, Fraction] = {}
        for e in edges_alive:
            x, y = self.ends[e]
            assert x is not None and y is not None
            kind = EdgeKind.VERTICAL if self.vertical[e] else EdgeKind.HORIZONTAL
            edges.append(Edge(eid[e], kind, (vid[x], vid[y])))
            image = by_ends.get(frozenset((sigma_v[x], sigma_v[y])))
            if image is None:
                raise MalformedGraphError(f"Edge {e} lost its mirror image")
            emirror.append(eid[image])
            if self.vertical[e]:
                heights[eid[e]] = self.heights[e]
        real = self._axis_walk(
            [w for w in alive if sigma_v[w] == w], dict(zip(alive, halves, strict=True))
        )
        tree = PlanarTree(
            halves=tuple(halves),
            edges=tuple(edges),
            rotation=tuple(
                tuple(eid[e] for e in self.rotation[w] if e not in self.rays) for w in alive
            ),
            vertex_mirror=tuple(vid[sigma_v[w]] for w in alive),
            edge_mirror=tuple(emirror),
            axis=tuple(vid[w] for w in real),
        )
        weights = WeightAssignment(
            heights=heights, widths={vid[w]: self.widths[w] for w in alive}
        )
        members = tuple(frozenset(self.members[w]) for w in alive)
        return Reduction(tree, weights, members, tuple(edges_alive))


# --------------- Public operations ---------------


def extend(tree: PlanarTree, weights: WeightAssignment | None = None) -> ExtendedGraph:
    """Extended graph with rays; weights default to unit heights and zero widths."""
    if weights is None:
        weights = WeightAssignment(
            heights={e.id: Fraction(1) for e in tree.edges if e.is_vertical}, widths={}
        )
    return ExtendedGraph(tree, weights)


def zero_edges(tree: PlanarTree, weights: WeightAssignment) -> tuple[list[int], list[int]]:
    """Zero-increment horizontal edges and zero-weight vertical edges of the tree."""
    horizontal, vertical = [], []
    for e in tree.edges:
        if e.is_vertical:
            if weights.heights[e.id] == 0:
                vertical.append(e.id)
        elif weights.widths.get(e.tail, 0) == weights.widths.get(e.head, 0):
            horizontal.append(e.id)
    return horizontal, vertical


def contract(tree: PlanarTree, weights: WeightAssignment, edge: int) -> Reduction:
    tree.check_edge(edge)
    if tree.edges[edge].is_vertical:
        raise PreconditionError(f"Edge {edge} is vertical; contract needs a horizontal edge")
    ext = ExtendedGraph(tree, weights)
    ext.contract_edge(edge)
    mirror = tree.edge_mirror[edge]
    if mirror != edge and mirror in ext.ends:
        ext.contract_edge(mirror)
    return ext.result()


def zip_edge(tree: PlanarTree, weights: WeightAssignment, edge: int) -> Reduction:
    """Collapse the two half-strips supported by a zero-weight vertical edge."""
    tree.check_edge(edge)
    if not tree.edges[edge].is_vertical:
        raise PreconditionError(f"Edge {edge} is horizontal; zip needs a vertical edge")
    ext = ExtendedGraph(tree, weights)
    ext.zip_edge(edge)
    mirror = tree.edge_mirror[edge]
    if mirror != edge and mirror in ext.ends:
        ext.zip_edge(mirror)
    return ext.result()


def reduce(
    tree: PlanarTree, weights: WeightAssignment, rng: random.Random | None = None
) -> Reduction:
    """Eliminate zero edges until the strict axioms hold.

    Without ``rng`` the lowest-id zero edge goes first, horizontal before
    vertical; with ``rng`` the next edge is drawn at random.
    """
    current = identity_reduction(tree, weights)
    trace: list[int] = []
    while True:
        horizontal, vertical = zero_edges(current.tree, current.weights)
        trace.append(len(horizontal) + len(vertical))
        if not horizontal and not vertical:
            break
        if rng is not None:
            e = rng.choice(horizontal + vertical)
        else:
            e = horizontal[0] if horizontal else vertical[0]
        op = contract if e in horizontal else zip_edge
        current = compose(current, op(current.tree, current.weights, e))
    return current._replace(trace=tuple(trace))


def identity_reduction(tree: PlanarTree, weights: WeightAssignment) -> Reduction:
    return Reduction(
        tree,
        weights,
        tuple(frozenset((v,)) for v in tree.vertices),
        tuple(range(len(tree.edges))),
    )


def compose(first: Reduction, second: Reduction) -> Reduction:
    """Chain two degenerations; ``second`` acts on the output of ``first``."""
    members = tuple(
        frozenset().union(*(first.members[j] for j in group)) for group in second.members
    )
    origin = tuple(first.edge_origin[j] for j in second.edge_origin)
    return Reduction(second.tree, second.weights, members, origin, first.trace + second.trace)


# --------------- Face lattice ---------------


class FaceClass(str, Enum):
    INNER = "inner"
    OUTER = "outer"


@dataclass(frozen=True)
class FaceDescriptor:
    """A codimension-one face of the coordinate space.

    ``coordinate`` is a vertical edge id for ``kind == "H"`` (its weight is
    zero on the face) or a horizontal edge id for ``kind == "W"`` (its width
    increment is zero).
    ``order`` lists the nonzero closed-upper widths of the sampled cell from
    smallest to largest.
    """

    kind: str
    coordinate: int
    classification: FaceClass
    sample: WeightAssignment = field(compare=False)
    subordinate: PlanarTree | None = field(default=None, compare=False)
    key: str | None = None
    order: tuple[int, ...] = field(default=(), compare=False)


def _upper_tails(tree: PlanarTree, v: int) -> list[int]:
    tails = []
    for e in tree.rotation[v]:
        edge = tree.edges[e]
        if not edge.is_vertical and edge.head == v:
            t = edge.tail
            tails.append(tree.vertex_mirror[t] if tree.halves[t] is Half.LOWER else t)
    return tails


def _width_poset(
    tree: PlanarTree, tight: int | None
) -> tuple[nx.DiGraph, set[int], int | None, int | None]:
    """Width order of the closed upper half, the vertices pinned at zero and the level edge."""
    dag = nx.DiGraph()
    keep = [v for v in tree.vertices if tree.halves[v] is not Half.LOWER]
    dag.add_nodes_from(keep)
    for v in keep:
        for t in _upper_tails(tree, v):
            dag.add_edge(t, v)

    zero: set[int] = {v for v in keep if tree.d_vert(v)}
    tail = head = None
    if tight is not None:
        edge = tree.edges[tight]
        tail, head = edge.tail, edge.head
        if tree.halves[tail] is Half.LOWER:
            tail, head = tree.vertex_mirror[tail], tree.vertex_mirror[head]
        if tail in zero:
            stack = [head]
            while stack:
                x = stack.pop()
                if x in zero:
                    continue
                zero.add(x)
                stack.extend(_upper_tails(tree, x))
    return dag, zero, tail, head


def face_widths(
    tree: PlanarTree, rng: random.Random, tight: int | None = None
) -> dict[int, Fraction]:
    """Generic closed-upper widths, optionally with one horizontal edge made level."""
    dag, zero, tail, head = _width_poset(tree, tight)
    order = list(nx.lexicographical_topological_sort(dag))
    steps = {v: Fraction(rng.randint(1, 89), rng.randint(2, 11)) for v in dag}

    def compute(lift: Fraction) -> dict[int, Fraction]:
        widths: dict[int, Fraction] = {}
        for v in order:
            if v in zero:
                widths[v] = Fraction(0)
            elif v == head and tail is not None:
                widths[v] = widths[tail]
            else:
                floor = max((widths[t] for t in _upper_tails(tree, v)), default=Fraction(0))
                widths[v] = floor + steps[v] + (lift if v == tail else 0)
        return widths

    widths = compute(Fraction(0))
    if head is not None and tail is not None and head not in zero:
        others = [widths[t] for t in _upper_tails(tree, head) if t != tail]
        need = max(others, default=Fraction(0)) - widths[tail]
        if need >= 0:
            widths = compute(need + Fraction(1, rng.randint(2, 9)))
    return widths


def pattern_cells(tree: PlanarTree, tight: int | None = None) -> list[dict[int, Fraction]]:
    """One width assignment per width-order cell of a face.

    The cells are the strict orders of the nonzero closed-upper widths that the
    tree allows; on a ``W`` face the head of the level edge rides with its tail.
    An empty list means the face is empty.
    """
    dag, zero, tail, head = _width_poset(tree, tight)
    rep = {v: v for v in dag}
    if tail is not None and head is not None and head not in zero:
        rep[head] = tail
    quotient = nx.DiGraph()
    quotient.add_nodes_from(sorted({rep[v] for v in dag if v not in zero}))
    quotient.add_edges_from(
        (rep[a], rep[b])
        for a, b in dag.edges
        if a not in zero and b not in zero and rep[a] != rep[b]
    )
    cells: list[dict[int, Fraction]] = []
    try:
        for order in nx.all_topological_sorts(quotient):
            rank = {v: Fraction(i + 1) for i, v in enumerate(order)}
            cells.append({v: Fraction(0) if v in zero else rank[rep[v]] for v in dag})
    except nx.NetworkXUnfeasible:
        return []
    return cells


def _classify(tree: PlanarTree, sample: WeightAssignment) -> tuple[FaceClass, PlanarTree | None]:
    try:
        reduced = reduce(tree, sample)
    except OuterFaceError:
        return FaceClass.OUTER, None
    return FaceClass.INNER, reduced.tree


def _face_heights(
    tree: PlanarTree, rng: random.Random, zero: int | None
) -> dict[int, Fraction]:
    cols = tree.vertical_columns
    raw = {e: Fraction(0 if e == zero else rng.randint(1, 40)) for e in cols}
    total = sum(tree.column_weight(e) * raw[e] for e in cols)
    return {e: raw[e] / total for e in cols} if total else raw


def _face_cells(
    tree: PlanarTree,
    kind: str,
    coordinate: int,
    heights: dict[int, Fraction],
    cells: list[dict[int, Fraction]],
) -> list[FaceDescriptor]:
    """Reduce one point per width-order cell; cells with the same outcome share a descriptor."""
    out: dict[tuple[FaceClass, str | None], FaceDescriptor] = {}
    for widths in cells:
        sample = WeightAssignment.symmetric(tree, heights, widths)
        cls, sub = _classify(tree, sample)
        key = canonical_form(sub) if sub else None
        if (cls, key) not in out:
            order = tuple(sorted((v for v in widths if widths[v]), key=lambda v: widths[v]))
            out[cls, key] = FaceDescriptor(kind, coordinate, cls, sample, sub, key, order)
    return list(out.values())


def face_lattice(tree: PlanarTree, rng: random.Random | None = None) -> list[FaceDescriptor]:
    """Codimension-one faces split into their width-order cells.

    Every cell is reduced at one point. A face whose cells all degenerate the same
    way yields one descriptor; otherwise each distinct outcome gets its own.
    """
    rng = rng or random.Random(0)
    faces: list[FaceDescriptor] = []
    everywhere = pattern_cells(tree)
    for col in tree.vertical_columns:
        faces += _face_cells(tree, "H", col, _face_heights(tree, rng, col), everywhere)
    for e in tree.edges:
        if e.is_vertical or not tree.in_closed_upper(e.id):
            continue
        cells = pattern_cells(tree, e.id)
        if not cells:
            logger.debug("face W%d of %s is empty", e.id, canonical_form(tree))
            continue
        faces += _face_cells(tree, "W", e.id, _face_heights(tree, rng, None), cells)
    logger.debug(
        "face lattice: %d faces, %d inner",
        len(faces),
        sum(1 for f in faces if f.classification is FaceClass.INNER),
    )
    return faces
