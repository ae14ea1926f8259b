"""Planar trees with real-axis symmetry and their exact weights.

A :class:`PlanarTree` stores the whole symmetric tree: every vertex carries a
half-plane tag, every vertex has a counterclockwise rotation of incident edge
ids, and ``vertex_mirror`` / ``edge_mirror`` realise complex conjugation.
Horizontal edges are stored as ``(tail, head)`` in the direction in which the
width function grows.
"""

from __future__ import annotations

import logging
import random
from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from functools import cached_property
from itertools import pairwise
from typing import NamedTuple

import networkx as nx

from .errors import MalformedGraphError, PreconditionError

logger = logging.getLogger(__name__)


class Half(str, Enum):
    REAL = "real"
    UPPER = "upper"
    LOWER = "lower"


class EdgeKind(str, Enum):
    VERTICAL = "v"
    HORIZONTAL = "h"


class WeightMode(str, Enum):
    STRICT = "strict"
    WEAK = "weak"


@dataclass(frozen=True)
class Edge:
    id: int
    kind: EdgeKind
    ends: tuple[int, int]

    @property
    def tail(self) -> int:
        return self.ends[0]

    @property
    def head(self) -> int:
        return self.ends[1]

    @property
    def is_vertical(self) -> bool:
        return self.kind is EdgeKind.VERTICAL

    def other(self, v: int) -> int:
        a, b = self.ends
        if v == a:
            return b
        if v == b:
            return a
        raise MalformedGraphError(f"Vertex {v} is not an endpoint of edge {self.id}")


class GraphInvariants(NamedTuple):
    genus: int
    ovals: int


@dataclass(frozen=True)
class ValidationReport:
    checks: dict[str, bool]
    messages: tuple[str, ...] = ()

    @property
    def ok(self) -> bool:
        return all(self.checks.values())

    def to_dict(self) -> dict[str, object]:
        return {"ok": self.ok, "checks": dict(self.checks), "messages": list(self.messages)}


def rotate_to(seq: Sequence[int], item: int) -> list[int]:
    """Return ``seq`` cyclically rotated so that it starts at ``item``."""
    i = list(seq).index(item)
    return [*seq[i:], *seq[:i]]


def cyclic_equal(a: Sequence[int], b: Sequence[int]) -> bool:
    if len(a) != len(b):
        return False
    if not a:
        return True
    if a[0] not in b:
        return False
    return rotate_to(b, a[0]) == list(a)


@dataclass(frozen=True)
class PlanarTree:
    halves: tuple[Half, ...]
    edges: tuple[Edge, ...]
    rotation: tuple[tuple[int, ...], ...]
    vertex_mirror: tuple[int, ...]
    edge_mirror: tuple[int, ...]
    axis: tuple[int, ...]

    def __post_init__(self) -> None:
        n = len(self.halves)
        if n == 0:
            raise MalformedGraphError("A planar tree needs at least one vertex")
        if len(self.rotation) != n or len(self.vertex_mirror) != n:
            raise MalformedGraphError("rotation and vertex mirror must cover every vertex")
        if len(self.edge_mirror) != len(self.edges):
            raise MalformedGraphError("edge mirror must cover every edge")
        seen: dict[int, list[int]] = {v: [] for v in range(n)}
        for i, e in enumerate(self.edges):
            if e.id != i:
                raise MalformedGraphError(f"Edge ids must be dense, found {e.id} at position {i}")
            a, b = e.ends
            if not (0 <= a < n and 0 <= b < n) or a == b:
                raise MalformedGraphError(f"Edge {e.id} has invalid endpoints {e.ends}")
            seen[a].append(e.id)
            seen[b].append(e.id)
        for v in range(n):
            if sorted(self.rotation[v]) != sorted(seen[v]):
                raise MalformedGraphError(f"Rotation at vertex {v} does not list its incident edges")
        if any(not 0 <= m < n for m in self.vertex_mirror) or any(
            not 0 <= m < len(self.edges) for m in self.edge_mirror
        ):
            raise MalformedGraphError("Mirror maps point outside the tree")
        real = sorted(v for v in range(n) if self.halves[v] is Half.REAL)
        if sorted(self.axis) != real:
            raise MalformedGraphError("axis must list every real vertex exactly once")

    # --------------- Basic accessors ---------------

    @property
    def n_vertices(self) -> int:
        return len(self.halves)

    @property
    def vertices(self) -> range:
        return range(len(self.halves))

    def check_vertex(self, v: int) -> None:
        if not 0 <= v < len(self.halves):
            raise MalformedGraphError(f"Unknown vertex id {v}")

    def check_edge(self, e: int) -> None:
        if not 0 <= e < len(self.edges):
            raise MalformedGraphError(f"Unknown edge id {e}")

    def neighbour(self, v: int, e: int) -> int:
        return self.edges[e].other(v)

    def d_vert(self, v: int) -> int:
        return sum(1 for e in self.rotation[v] if self.edges[e].is_vertical)

    def d_in(self, v: int) -> int:
        return sum(
            1 for e in self.rotation[v] if not self.edges[e].is_vertical and self.edges[e].head == v
        )

    def d_out(self, v: int) -> int:
        return sum(
            1 for e in self.rotation[v] if not self.edges[e].is_vertical and self.edges[e].tail == v
        )

    def is_outgoing(self, v: int, e: int) -> bool:
        edge = self.edges[e]
        return not edge.is_vertical and edge.tail == v

    def is_real_edge(self, e: int) -> bool:
        a, b = self.edges[e].ends
        return self.halves[a] is Half.REAL and self.halves[b] is Half.REAL

    def is_upper_edge(self, e: int) -> bool:
        return any(self.halves[x] is Half.UPPER for x in self.edges[e].ends)

    def in_closed_upper(self, e: int) -> bool:
        return self.is_real_edge(e) or self.is_upper_edge(e)

    def ends_after(self, v: int, e: int) -> list[int]:
        """Edge ends at ``v`` in ccw order, starting right after ``e``."""
        return rotate_to(self.rotation[v], e)[1:]

    def next_ccw(self, v: int, e: int) -> int:
        rot = self.rotation[v]
        return rot[(rot.index(e) + 1) % len(rot)]

    def prev_ccw(self, v: int, e: int) -> int:
        rot = self.rotation[v]
        return rot[(rot.index(e) - 1) % len(rot)]

    # --------------- Derived structure ---------------

    @cached_property
    def axis_index(self) -> dict[int, int]:
        return {v: i for i, v in enumerate(self.axis)}

    @cached_property
    def _edge_between(self) -> dict[frozenset[int], int]:
        return {frozenset(e.ends): e.id for e in self.edges}

    def edge_between(self, a: int, b: int) -> int | None:
        return self._edge_between.get(frozenset((a, b)))

    def right_edge(self, v: int) -> int | None:
        i = self.axis_index[v]
        if i + 1 >= len(self.axis):
            return None
        return self.edge_between(v, self.axis[i + 1])

    def left_edge(self, v: int) -> int | None:
        i = self.axis_index[v]
        if i == 0:
            return None
        return self.edge_between(v, self.axis[i - 1])

    def upper_ends(self, v: int) -> list[int]:
        """Ends of a real vertex leading into the upper half, in ccw order."""
        return self._half_block(v, Half.UPPER)

    def lower_ends(self, v: int) -> list[int]:
        return self._half_block(v, Half.LOWER)

    def _half_block(self, v: int, half: Half) -> list[int]:
        rot = self.rotation[v]
        flags = [self.halves[self.neighbour(v, e)] is half for e in rot]
        if not any(flags):
            return []
        m = len(rot)
        starts = [i for i in range(m) if flags[i] and not flags[i - 1]]
        start = starts[0] if starts else 0
        block = []
        for j in range(m):
            i = (start + j) % m
            if not flags[i]:
                break
            block.append(rot[i])
        return block

    @cached_property
    def vertical_columns(self) -> tuple[int, ...]:
        """Vertical edges of the closed upper half: the independent H coordinates."""
        return tuple(
            e.id for e in self.edges if e.is_vertical and self.in_closed_upper(e.id)
        )

    @cached_property
    def free_vertices(self) -> tuple[int, ...]:
        """Closed-upper-half vertices off the vertical subgraph: the free W coordinates."""
        return tuple(
            v for v in self.vertices if self.halves[v] is not Half.LOWER and self.d_vert(v) == 0
        )

    def column_weight(self, e: int) -> int:
        return 1 if self.is_real_edge(e) else 2


# --------------- Weights ---------------


@dataclass(frozen=True)
class WeightAssignment:
    """Exact weights: ``heights`` on vertical edges (units of pi), ``widths`` on vertices."""

    heights: Mapping[int, Fraction] = field(default_factory=dict)
    widths: Mapping[int, Fraction] = field(default_factory=dict)

    @classmethod
    def symmetric(
        cls,
        tree: PlanarTree,
        heights: Mapping[int, Fraction],
        widths: Mapping[int, Fraction] | None = None,
    ) -> WeightAssignment:
        """Complete closed-upper-half weights to the whole tree through the mirror."""
        h: dict[int, Fraction] = {}
        for e, value in heights.items():
            tree.check_edge(e)
            h[e] = Fraction(value)
            h[tree.edge_mirror[e]] = Fraction(value)
        w: dict[int, Fraction] = {v: Fraction(0) for v in tree.vertices}
        for v, value in (widths or {}).items():
            tree.check_vertex(v)
            w[v] = Fraction(value)
            w[tree.vertex_mirror[v]] = Fraction(value)
        return cls(heights=h, widths=w)

    def height_vector(self, tree: PlanarTree) -> tuple[Fraction, ...]:
        try:
            return tuple(self.heights[e] for e in tree.vertical_columns)
        except KeyError as e:
            raise MalformedGraphError(f"Missing vertical weight for edge {e.args[0]}") from e

    def width_vector(self, tree: PlanarTree) -> tuple[Fraction, ...]:
        return tuple(self.widths.get(v, Fraction(0)) for v in tree.free_vertices)


# --------------- Orders and invariants ---------------


def ord(tree: PlanarTree, v: int) -> int:
    """Multiplicity of ``v`` in the divisor: ``d_vert + 2 d_in - 2``."""
    tree.check_vertex(v)
    return tree.d_vert(v) + 2 * tree.d_in(v) - 2


def is_branchpoint(tree: PlanarTree, v: int) -> bool:
    return ord(tree, v) % 2 == 1


def branchpoints(tree: PlanarTree) -> list[int]:
    return [v for v in tree.vertices if is_branchpoint(tree, v)]


def invariants(tree: PlanarTree) -> GraphInvariants:
    points = branchpoints(tree)
    real = [v for v in points if tree.halves[v] is Half.REAL]
    if len(points) % 2 or len(real) % 2:
        raise MalformedGraphError(
            f"Odd branchpoint count: {len(points)} in total, {len(real)} on the real axis"
        )
    return GraphInvariants(genus=len(points) // 2 - 1, ovals=len(real) // 2)


def dim_coordinate_space(tree: PlanarTree) -> int:
    return len(tree.vertical_columns) - 1 + len(tree.free_vertices)


def admits_strict_weights(tree: PlanarTree) -> bool:
    """True when no horizontal edge ends at a vertex of the vertical subgraph."""
    return all(e.is_vertical or tree.d_vert(e.head) == 0 for e in tree.edges)


def upper_half(tree: PlanarTree) -> tuple[tuple[int, ...], tuple[int, ...]]:
    vertices = tuple(v for v in tree.vertices if tree.halves[v] is not Half.LOWER)
    edges = tuple(e.id for e in tree.edges if tree.in_closed_upper(e.id))
    return vertices, edges


# --------------- Validation ---------------


def _axis_classes(tree: PlanarTree, v: int) -> list[str]:
    right, left = tree.right_edge(v), tree.left_edge(v)
    out = []
    for e in tree.rotation[v]:
        if e == right:
            out.append("R")
        elif e == left:
            out.append("L")
        elif tree.halves[tree.neighbour(v, e)] is Half.UPPER:
            out.append("U")
        else:
            out.append("D")
    return out


def _is_axis_pattern(classes: list[str]) -> bool:
    if not classes:
        return True
    runs = [c for i, c in enumerate(classes) if c != classes[i - 1]] or [classes[0]]
    if len(runs) != len(set(runs)):
        return False
    order = "RULD"
    positions = [order.index(c) for c in runs]
    shift = positions.index(min(positions))
    positions = positions[shift:] + positions[:shift]
    return positions == sorted(positions)


def _sigma_messages(tree: PlanarTree) -> list[str]:
    msgs: list[str] = []
    vm, em = tree.vertex_mirror, tree.edge_mirror
    for v in tree.vertices:
        if vm[vm[v]] != v:
            msgs.append(f"vertex mirror is not an involution at {v}")
        half = tree.halves[v]
        if (half is Half.REAL) != (vm[v] == v):
            msgs.append(f"vertex {v}: mirror fixes exactly the real vertices")
        if half is Half.UPPER and tree.halves[vm[v]] is not Half.LOWER:
            msgs.append(f"vertex {v}: mirror must swap upper and lower")
        mirrored = [em[e] for e in reversed(tree.rotation[v])]
        if not cyclic_equal(mirrored, tree.rotation[vm[v]]):
            msgs.append(f"vertex {v}: mirror must reverse the rotation")
    for e in tree.edges:
        image = tree.edges[em[e.id]]
        if em[image.id] != e.id:
            msgs.append(f"edge mirror is not an involution at {e.id}")
        if (em[e.id] == e.id) != tree.is_real_edge(e.id):
            msgs.append(f"edge {e.id}: mirror fixes exactly the real edges")
        if image.kind is not e.kind:
            msgs.append(f"edge {e.id}: mirror changes the edge kind")
        elif e.is_vertical:
            if {vm[x] for x in e.ends} != set(image.ends):
                msgs.append(f"edge {e.id}: mirror does not respect endpoints")
        elif (vm[e.tail], vm[e.head]) != image.ends:
            msgs.append(f"edge {e.id}: mirror does not respect orientation")
    for i in range(len(tree.axis) - 1):
        if tree.edge_between(tree.axis[i], tree.axis[i + 1]) is None:
            msgs.append(f"real vertices {tree.axis[i]} and {tree.axis[i + 1]} are not joined")
    consecutive = {frozenset(p) for p in pairwise(tree.axis)}
    for e in tree.edges:
        if tree.is_real_edge(e.id) and frozenset(e.ends) not in consecutive:
            msgs.append(f"real edge {e.id} skips along the axis")
    for v in tree.axis:
        if not _is_axis_pattern(_axis_classes(tree, v)):
            msgs.append(f"real vertex {v}: rotation is not right, upper, left, lower")
    return msgs


def validate_topology(tree: PlanarTree) -> ValidationReport:
    msgs: list[str] = []
    graph = nx.MultiGraph()
    graph.add_nodes_from(tree.vertices)
    graph.add_edges_from(e.ends for e in tree.edges)
    t1 = nx.is_tree(graph)
    if not t1:
        msgs.append("underlying graph is not a tree")

    t2 = True
    for v in tree.vertices:
        outs = [tree.is_outgoing(v, e) for e in tree.rotation[v]]
        m = len(outs)
        if any(outs[i] and outs[(i + 1) % m] for i in range(m)):
            t2 = False
            msgs.append(f"vertex {v}: outgoing horizontal ends are adjacent")

    t3 = True
    for v in tree.vertices:
        order = ord(tree, v)
        if order < -1:
            t3 = False
            msgs.append(f"vertex {v}: ord {order} below -1")
        elif order == 0 and (tree.d_vert(v) == 0 or tree.d_in(v) + tree.d_out(v) == 0):
            t3 = False
            msgs.append(f"vertex {v}: ord 0 off the vertical or horizontal subgraph")

    sigma = _sigma_messages(tree)
    msgs.extend(sigma)
    return ValidationReport(
        checks={"T1": t1, "T2": t2, "T3": t3, "sigma": not sigma}, messages=tuple(msgs)
    )


def validate_weights(
    tree: PlanarTree, weights: WeightAssignment, mode: WeightMode = WeightMode.STRICT
) -> ValidationReport:
    strict = mode is WeightMode.STRICT
    suffix = "" if strict else "*"
    msgs: list[str] = []
    h, w = weights.heights, weights.widths

    sym = True
    for e in tree.edges:
        if e.is_vertical and h.get(e.id) != h.get(tree.edge_mirror[e.id]):
            sym = False
            msgs.append(f"H differs on edge {e.id} and its mirror")
    for v in tree.vertices:
        if w.get(v, Fraction(0)) != w.get(tree.vertex_mirror[v], Fraction(0)):
            sym = False
            msgs.append(f"W differs on vertex {v} and its mirror")

    w1 = True
    for v in tree.vertices:
        value = w.get(v, Fraction(0))
        if value < 0:
            w1 = False
            msgs.append(f"W({v}) is negative")
        if tree.d_vert(v) and value != 0:
            w1 = False
            msgs.append(f"W({v}) must vanish on the vertical subgraph")
    for e in tree.edges:
        if e.is_vertical:
            continue
        lo, hi = w.get(e.tail, Fraction(0)), w.get(e.head, Fraction(0))
        if hi < lo or (strict and hi == lo):
            w1 = False
            msgs.append(f"W does not {'increase' if strict else 'grow'} along edge {e.id}")

    w2 = True
    for e in tree.edges:
        if not e.is_vertical:
            continue
        if e.id not in h:
            w2 = False
            msgs.append(f"missing H on vertical edge {e.id}")
            continue
        if h[e.id] < 0 or (strict and h[e.id] == 0):
            w2 = False
            msgs.append(f"H({e.id}) = {h[e.id]} is not {'positive' if strict else 'nonnegative'}")
    if w2:
        total = sum(tree.column_weight(e) * h[e] for e in tree.vertical_columns)
        if total != 1:
            w2 = False
            msgs.append(f"normalization: weighted H sum is {total}, expected 1")

    return ValidationReport(
        checks={f"W1{suffix}": w1, f"W2{suffix}": w2, "sigma": sym}, messages=tuple(msgs)
    )


# --------------- Canonical forms ---------------


class CanonicalLabels(NamedTuple):
    key: str
    vertices: tuple[int, ...]
    edges: tuple[int, ...]


def _edge_code(tree: PlanarTree, e: int, frm: int) -> str:
    edge = tree.edges[e]
    if edge.is_vertical:
        return "v"
    return "o" if edge.tail == frm else "i"


def canonical_labels(tree: PlanarTree) -> CanonicalLabels:
    """Canonical traversal of the closed upper half from the leftmost real vertex."""
    vorder: list[int] = []
    eorder: list[int] = []

    def subtree(e: int, parent: int) -> str:
        child = tree.neighbour(parent, e)
        eorder.append(e)
        vorder.append(child)
        inner = ",".join(subtree(f, child) for f in tree.ends_after(child, e))
        return f"{_edge_code(tree, e, parent)}({inner})"

    parts = []
    for v in tree.axis:
        vorder.append(v)
        ups = ",".join(subtree(e, v) for e in tree.upper_ends(v))
        right = tree.right_edge(v)
        code = ""
        if right is not None:
            eorder.append(right)
            code = _edge_code(tree, right, v)
        parts.append(f"[{ups}]{code}")
    return CanonicalLabels("".join(parts), tuple(vorder), tuple(eorder))


def canonical_form(tree: PlanarTree) -> str:
    return canonical_labels(tree).key


def canonical_weights(tree: PlanarTree, weights: WeightAssignment) -> tuple[Fraction, ...]:
    """Weights listed in canonical traversal order: heights first, then widths."""
    labels = canonical_labels(tree)
    hs = tuple(weights.heights[e] for e in labels.edges if tree.edges[e].is_vertical)
    ws = tuple(weights.widths.get(v, Fraction(0)) for v in labels.vertices)
    return hs + ws


def central_symmetry(tree: PlanarTree) -> PlanarTree:
    """Image of the tree under ``z -> -z``."""
    swap = {Half.REAL: Half.REAL, Half.UPPER: Half.LOWER, Half.LOWER: Half.UPPER}
    return PlanarTree(
        halves=tuple(swap[h] for h in tree.halves),
        edges=tree.edges,
        rotation=tree.rotation,
        vertex_mirror=tree.vertex_mirror,
        edge_mirror=tree.edge_mirror,
        axis=tuple(reversed(tree.axis)),
    )


def relabel(tree: PlanarTree, vertex_map: Sequence[int], edge_map: Sequence[int]) -> PlanarTree:
    """Rename vertex ``v`` to ``vertex_map[v]`` and edge ``e`` to ``edge_map[e]``."""
    n, m = tree.n_vertices, len(tree.edges)
    halves: list[Half] = [Half.REAL] * n
    rotation: list[tuple[int, ...]] = [()] * n
    vmirror = [0] * n
    for v in tree.vertices:
        halves[vertex_map[v]] = tree.halves[v]
        rotation[vertex_map[v]] = tuple(edge_map[e] for e in tree.rotation[v])
        vmirror[vertex_map[v]] = vertex_map[tree.vertex_mirror[v]]
    edges: list[Edge | None] = [None] * m
    emirror = [0] * m
    for e in tree.edges:
        edges[edge_map[e.id]] = Edge(
            edge_map[e.id], e.kind, (vertex_map[e.ends[0]], vertex_map[e.ends[1]])
        )
        emirror[edge_map[e.id]] = edge_map[tree.edge_mirror[e.id]]
    return PlanarTree(
        halves=tuple(halves),
        edges=tuple(e for e in edges if e is not None),
        rotation=tuple(rotation),
        vertex_mirror=tuple(vmirror),
        edge_mirror=tuple(emirror),
        axis=tuple(vertex_map[v] for v in tree.axis),
    )


def relabel_weights(
    weights: WeightAssignment, vertex_map: Sequence[int], edge_map: Sequence[int]
) -> WeightAssignment:
    return WeightAssignment(
        heights={edge_map[e]: h for e, h in weights.heights.items()},
        widths={vertex_map[v]: w for v, w in weights.widths.items()},
    )


# --------------- Random weights ---------------


def _width_order(tree: PlanarTree) -> list[int]:
    """Closed-upper-half vertices in an order compatible with horizontal orientation."""
    dag = nx.DiGraph()
    keep = [v for v in tree.vertices if tree.halves[v] is not Half.LOWER]
    dag.add_nodes_from(keep)
    for e in tree.edges:
        if not e.is_vertical and tree.in_closed_upper(e.id):
            dag.add_edge(e.tail, e.head)
    return list(nx.lexicographical_topological_sort(dag))


def _incoming_tails(tree: PlanarTree, v: int) -> list[int]:
    """Tails of edges into ``v``; lower tails are replaced by their upper mirror."""
    tails = []
    for e in tree.rotation[v]:
        edge = tree.edges[e]
        if not edge.is_vertical and edge.head == v:
            t = edge.tail
            tails.append(tree.vertex_mirror[t] if tree.halves[t] is Half.LOWER else t)
    return tails


def _normalized_heights(tree: PlanarTree, raw: Mapping[int, Fraction]) -> dict[int, Fraction]:
    total = sum(tree.column_weight(e) * raw[e] for e in tree.vertical_columns)
    return {e: raw[e] / total for e in tree.vertical_columns}


def random_strict_weights(tree: PlanarTree, rng: random.Random) -> WeightAssignment:
    if not admits_strict_weights(tree):
        raise PreconditionError("Tree has a horizontal edge ending on the vertical subgraph")
    raw = {e: Fraction(rng.randint(1, 60)) for e in tree.vertical_columns}
    widths: dict[int, Fraction] = {}
    for v in _width_order(tree):
        if tree.d_vert(v):
            widths[v] = Fraction(0)
            continue
        floor = max((widths[t] for t in _incoming_tails(tree, v)), default=Fraction(0))
        widths[v] = floor + Fraction(rng.randint(1, 97), rng.randint(1, 13))
    return WeightAssignment.symmetric(tree, _normalized_heights(tree, raw), widths)


def random_weak_weights(
    tree: PlanarTree, rng: random.Random, zero_prob: float = 0.3
) -> WeightAssignment:
    """Weak-mode sample: each coordinate is zeroed with probability ``zero_prob``."""
    cols = tree.vertical_columns
    raw = {e: Fraction(0 if rng.random() < zero_prob else rng.randint(1, 60)) for e in cols}
    if not any(raw.values()):
        raw[rng.choice(cols)] = Fraction(1)
    widths: dict[int, Fraction] = {}
    for v in _width_order(tree):
        if tree.d_vert(v):
            widths[v] = Fraction(0)
            continue
        floor = max((widths[t] for t in _incoming_tails(tree, v)), default=Fraction(0))
        step = Fraction(0) if rng.random() < zero_prob else Fraction(rng.randint(1, 97), 7)
        widths[v] = floor + step
    return WeightAssignment.symmetric(tree, _normalized_heights(tree, raw), widths)


def weights_from_vector(
    tree: PlanarTree, heights: Iterable[Fraction], widths: Iterable[Fraction] = ()
) -> WeightAssignment:
    """Weights from column-ordered H values and free-vertex-ordered W values."""
    h = dict(zip(tree.vertical_columns, heights, strict=True))
    w = dict(zip(tree.free_vertices, widths, strict=False))
    return WeightAssignment.symmetric(tree, h, w)
