"""Local pictures of stable vertices.

An edge end is described from the vertex it is attached to: ``VERTICAL``,
``IN`` (the vertex is the head of a horizontal edge) or ``OUT`` (the tail).
"""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass
from enum import Enum


class End(str, Enum):
    VERTICAL = "v"
    IN = "in"
    OUT = "out"

    def flipped(self) -> End:
        """The same edge seen from its other endpoint."""
        if self is End.IN:
            return End.OUT
        if self is End.OUT:
            return End.IN
        return self


def signature(ends: Sequence[End]) -> tuple[int, int, int]:
    """``(d_vert, d_in, d_out)`` of a vertex with the given ends."""
    return (
        sum(1 for e in ends if e is End.VERTICAL),
        sum(1 for e in ends if e is End.IN),
        sum(1 for e in ends if e is End.OUT),
    )


def order_of(ends: Sequence[End]) -> int:
    d_vert, d_in, _ = signature(ends)
    return d_vert + 2 * d_in - 2


def locally_admissible(ends: Sequence[End]) -> bool:
    """Local tree axioms plus strict-weight consistency for one cyclic end list."""
    if not ends:
        return False
    d_vert, d_in, d_out = signature(ends)
    order = d_vert + 2 * d_in - 2
    if order < -1:
        return False
    m = len(ends)
    if any(ends[i] is End.OUT and ends[(i + 1) % m] is End.OUT for i in range(m)):
        return False
    if order == 0 and (d_vert == 0 or d_in + d_out == 0):
        return False
    # W vanishes on the vertical subgraph, so nothing can flow into it.
    return not (d_vert and d_in)


@dataclass(frozen=True)
class AxisPicture:
    """A real vertex: its right and left axis ends and the end going up (mirrored below)."""

    left: End | None
    right: End | None
    upper: End | None

    @property
    def ends(self) -> tuple[End, ...]:
        cyclic = (self.right, self.upper, self.left, self.upper)
        return tuple(e for e in cyclic if e is not None)

    @property
    def order(self) -> int:
        return order_of(self.ends)


@dataclass(frozen=True)
class UpperPicture:
    """An off-axis vertex as a cyclic list of ends."""

    ends: tuple[End, ...]

    @property
    def order(self) -> int:
        return order_of(self.ends)


class StableVertexKind(str, Enum):
    TIP = "U1"
    VERTICAL_WITH_OUTGOING = "U2"
    TWO_INCOMING = "U3"
    END_RIGHT = "H_R"
    END_LEFT = "H_L"
    VERTICAL_CROSS = "X1"
    BRANCH_OUT_RIGHT = "X2a"
    BRANCH_OUT_LEFT = "X2b"
    VERTICAL_AXIS_UP_OUTGOING = "X3"
    SADDLE = "S"
    TWO_OUTGOING_UP_VERTICAL = "X4"
    FOUR_HORIZONTAL = "X5"
    ACROSS_VERTICAL_RIGHT = "R-b_R"
    ACROSS_VERTICAL_LEFT = "R-b_L"
    THREE_HORIZONTAL_RIGHT = "X6_R"
    THREE_HORIZONTAL_LEFT = "X6_L"


V, IN, OUT = End.VERTICAL, End.IN, End.OUT

AXIS_PICTURES: dict[StableVertexKind, AxisPicture] = {
    StableVertexKind.END_RIGHT: AxisPicture(None, V, None),
    StableVertexKind.END_LEFT: AxisPicture(V, None, None),
    StableVertexKind.VERTICAL_CROSS: AxisPicture(V, V, V),
    StableVertexKind.BRANCH_OUT_RIGHT: AxisPicture(V, OUT, None),
    StableVertexKind.BRANCH_OUT_LEFT: AxisPicture(OUT, V, None),
    StableVertexKind.VERTICAL_AXIS_UP_OUTGOING: AxisPicture(V, V, OUT),
    StableVertexKind.SADDLE: AxisPicture(IN, IN, None),
    StableVertexKind.TWO_OUTGOING_UP_VERTICAL: AxisPicture(OUT, OUT, V),
    StableVertexKind.FOUR_HORIZONTAL: AxisPicture(OUT, OUT, IN),
    StableVertexKind.ACROSS_VERTICAL_RIGHT: AxisPicture(None, OUT, V),
    StableVertexKind.ACROSS_VERTICAL_LEFT: AxisPicture(OUT, None, V),
    StableVertexKind.THREE_HORIZONTAL_RIGHT: AxisPicture(None, OUT, IN),
    StableVertexKind.THREE_HORIZONTAL_LEFT: AxisPicture(OUT, None, IN),
}

UPPER_PICTURES: dict[StableVertexKind, UpperPicture] = {
    StableVertexKind.TIP: UpperPicture((V,)),
    StableVertexKind.VERTICAL_WITH_OUTGOING: UpperPicture((V, V, OUT)),
    StableVertexKind.TWO_INCOMING: UpperPicture((IN, IN)),
}

# Fewest upper branchpoints a subtree hanging from each kind of upper end can carry.
MIN_TIPS: dict[End, int] = {V: 1, OUT: 2, IN: 2}


def kind_of_axis(picture: AxisPicture) -> StableVertexKind | None:
    for kind, p in AXIS_PICTURES.items():
        if p == picture:
            return kind
    return None


def kind_of_upper(ends: Sequence[End]) -> StableVertexKind | None:
    for kind, p in UPPER_PICTURES.items():
        if len(p.ends) != len(ends):
            continue
        m = len(ends)
        if any(tuple(ends[(i + j) % m] for j in range(m)) == p.ends for i in range(m)):
            return kind
    return None
