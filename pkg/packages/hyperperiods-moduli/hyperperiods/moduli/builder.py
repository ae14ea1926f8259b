"""Assemble symmetric planar trees from an axis chain plus upper subtrees."""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass

from .errors import MalformedGraphError
from .graph import Edge, EdgeKind, Half, PlanarTree
from .kinds import AxisPicture, End


@dataclass(frozen=True)
class UpperNode:
    """Upper vertex entered from its parent; ``exits`` follow the entry end ccw.

    Each exit is ``(end, child)`` with ``end`` seen from this vertex.
    """

    exits: tuple[tuple[End, UpperNode], ...] = ()

    @property
    def size(self) -> int:
        return 1 + sum(child.size for _, child in self.exits)


@dataclass(frozen=True)
class AxisVertex:
    picture: AxisPicture
    subtree: UpperNode | None = None

    def __post_init__(self) -> None:
        if (self.picture.upper is None) != (self.subtree is None):
            raise MalformedGraphError("An upper end needs exactly one subtree")


def chain_size(chain: Sequence[AxisVertex]) -> int:
    return len(chain) + 2 * sum(v.subtree.size for v in chain if v.subtree is not None)


class _Builder:
    def __init__(self, n_real: int) -> None:
        self.halves: list[Half] = [Half.REAL] * n_real
        self.mirror_v: list[int] = list(range(n_real))
        self.rotation: list[list[int]] = [[] for _ in range(n_real)]
        self.edges: list[Edge] = []
        self.mirror_e: list[int] = []

    def vertex_pair(self) -> tuple[int, int]:
        up, down = len(self.halves), len(self.halves) + 1
        self.halves += [Half.UPPER, Half.LOWER]
        self.mirror_v += [down, up]
        self.rotation += [[], []]
        return up, down

    def edge(self, frm: int, to: int, end: End) -> int:
        eid = len(self.edges)
        if end is End.VERTICAL:
            self.edges.append(Edge(eid, EdgeKind.VERTICAL, (frm, to)))
        elif end is End.OUT:
            self.edges.append(Edge(eid, EdgeKind.HORIZONTAL, (frm, to)))
        else:
            self.edges.append(Edge(eid, EdgeKind.HORIZONTAL, (to, frm)))
        self.mirror_e.append(eid)
        return eid

    def edge_pair(self, frm: tuple[int, int], to: tuple[int, int], end: End) -> tuple[int, int]:
        up = self.edge(frm[0], to[0], end)
        down = self.edge(frm[1], to[1], end)
        self.mirror_e[up], self.mirror_e[down] = down, up
        return up, down

    def grow(self, parent: tuple[int, int], end: End, node: UpperNode) -> tuple[int, int]:
        child = self.vertex_pair()
        entry = self.edge_pair(parent, child, end)
        exits = [self.grow(child, e, sub) for e, sub in node.exits]
        self.rotation[child[0]] = [entry[0], *(x[0] for x in exits)]
        self.rotation[child[1]] = [entry[1], *(x[1] for x in reversed(exits))]
        return entry

    def tree(self, n_real: int) -> PlanarTree:
        return PlanarTree(
            halves=tuple(self.halves),
            edges=tuple(self.edges),
            rotation=tuple(tuple(r) for r in self.rotation),
            vertex_mirror=tuple(self.mirror_v),
            edge_mirror=tuple(self.mirror_e),
            axis=tuple(range(n_real)),
        )


def build_tree(chain: Sequence[AxisVertex]) -> PlanarTree:
    """Build the full symmetric tree of an axis chain, left to right."""
    if not chain:
        raise MalformedGraphError("A chain needs at least one real vertex")
    if chain[0].picture.left is not None or chain[-1].picture.right is not None:
        raise MalformedGraphError("Chain ends must not carry outer axis edges")
    n = len(chain)
    b = _Builder(n)
    axis_edges: list[int] = []
    for i in range(n - 1):
        right, left = chain[i].picture.right, chain[i + 1].picture.left
        if right is None or left is None or left is not right.flipped():
            raise MalformedGraphError(f"Axis ends do not match between positions {i} and {i + 1}")
        axis_edges.append(b.edge(i, i + 1, right))
    for i, vertex in enumerate(chain):
        up = down = None
        if vertex.picture.upper is not None and vertex.subtree is not None:
            up, down = b.grow((i, i), vertex.picture.upper, vertex.subtree)
        rot = [
            axis_edges[i] if i < n - 1 else None,
            up,
            axis_edges[i - 1] if i > 0 else None,
            down,
        ]
        b.rotation[i] = [e for e in rot if e is not None]
    return b.tree(n)
