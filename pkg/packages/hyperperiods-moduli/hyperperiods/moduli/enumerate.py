"""Full-dimensional cells of the moduli space for given (g, k).

Two generators live here. :func:`enumerate_full_dim` grows chains of stable
on-axis kinds through matching axis ends and hangs stable upper subtrees on
them. :func:`enumerate_by_filter` ignores stability, grows every locally
admissible picture and filters by the global axioms and the dimension count.
Both dedupe by canonical form and must agree.
"""

from __future__ import annotations

import logging
import random
from collections.abc import Iterator, Sequence
from functools import lru_cache
from itertools import product

from .builder import AxisVertex, UpperNode, build_tree, chain_size
from .config import Settings
from .degenerate import FaceClass, face_lattice
from .errors import BudgetExceededError, UnsupportedError
from .graph import (
    PlanarTree,
    admits_strict_weights,
    canonical_form,
    dim_coordinate_space,
    invariants,
    validate_topology,
)
from .kinds import (
    AXIS_PICTURES,
    MIN_TIPS,
    AxisPicture,
    End,
    StableVertexKind,
    kind_of_axis,
    kind_of_upper,
    locally_admissible,
    order_of,
)

logger = logging.getLogger(__name__)

V, IN, OUT = End.VERTICAL, End.IN, End.OUT


def _check_range(genus: int, ovals: int) -> None:
    if genus < 0 or not 1 <= ovals <= genus + 1:
        raise UnsupportedError(f"Unsupported invariants (g={genus}, k={ovals})")


def _accept(tree: PlanarTree, genus: int, ovals: int) -> bool:
    return (
        validate_topology(tree).ok
        and admits_strict_weights(tree)
        and invariants(tree) == (genus, ovals)
        and dim_coordinate_space(tree) == 2 * genus
    )


# --------------- Stable grammar ---------------


def _vertical_chains(tips: int) -> Iterator[UpperNode]:
    """Subtrees entered through a vertical edge."""
    if tips == 1:
        yield UpperNode()
        return
    for a in range(1, tips - 1):
        for chain in _vertical_chains(a):
            for pair in _paired_nodes(tips - a):
                saddle = UpperNode(((IN, pair),))
                yield UpperNode(((OUT, saddle), (V, chain)))
                yield UpperNode(((V, chain), (OUT, saddle)))


def _paired_nodes(tips: int) -> Iterator[UpperNode]:
    """A vertical-with-outgoing vertex entered through its outgoing edge."""
    for a in range(1, tips):
        for first in _vertical_chains(a):
            for second in _vertical_chains(tips - a):
                yield UpperNode(((V, first), (V, second)))


def _slot_subtrees(end: End, tips: int) -> Iterator[UpperNode]:
    if end is V:
        yield from _vertical_chains(tips)
    elif end is OUT:
        for pair in _paired_nodes(tips):
            yield UpperNode(((IN, pair),))
    else:
        yield from _paired_nodes(tips)


def _stable_chains(genus: int, ovals: int) -> Iterator[list[StableVertexKind]]:
    tips = genus + 1 - ovals
    real_points = 2 * ovals

    def grow(
        prefix: list[StableVertexKind], state: End | None, points: int, slots: int
    ) -> Iterator[list[StableVertexKind]]:
        for kind, pic in AXIS_PICTURES.items():
            if (pic.left is None) != (state is None):
                continue
            if state is not None and pic.left is not state.flipped():
                continue
            p = points + (pic.order % 2)
            s = slots + (MIN_TIPS[pic.upper] if pic.upper is not None else 0)
            if p > real_points or s > tips:
                continue
            if pic.right is None:
                if p == real_points:
                    yield [*prefix, kind]
                continue
            yield from grow([*prefix, kind], pic.right, p, s)

    # The first vertex has no left end; seed with state None.
    yield from grow([], None, 0, 0)


def _compositions(total: int, minima: Sequence[int]) -> Iterator[tuple[int, ...]]:
    if not minima:
        if total == 0:
            yield ()
        return
    head, rest = minima[0], minima[1:]
    for first in range(head, total - sum(rest) + 1):
        for tail in _compositions(total - first, rest):
            yield (first, *tail)


def enumerate_full_dim(
    genus: int, ovals: int, settings: Settings | None = None
) -> list[PlanarTree]:
    """All full-dimensional cells for (g, k), sorted by canonical form."""
    _check_range(genus, ovals)
    settings = settings or Settings()
    budget = settings.vertex_budget(genus)
    tips = genus + 1 - ovals
    found: dict[str, PlanarTree] = {}
    for kinds in _stable_chains(genus, ovals):
        pictures = [AXIS_PICTURES[k] for k in kinds]
        slots = [p.upper for p in pictures if p.upper is not None]
        for split in _compositions(tips, [MIN_TIPS[s] for s in slots]):
            options = [list(_slot_subtrees(s, t)) for s, t in zip(slots, split, strict=True)]
            for subtrees in product(*options):
                it = iter(subtrees)
                chain = [AxisVertex(p, next(it) if p.upper is not None else None) for p in pictures]
                size = chain_size(chain)
                if size > budget:
                    raise BudgetExceededError(budget, size)
                tree = build_tree(chain)
                if not _accept(tree, genus, ovals):
                    logger.debug("Dropping non-generic candidate %s", describe(tree))
                    continue
                found.setdefault(canonical_form(tree), tree)
    logger.debug("Enumerated %d cells for g=%d k=%d", len(found), genus, ovals)
    return [found[key] for key in sorted(found)]


@lru_cache(maxsize=32)
def full_dim_catalog(genus: int, ovals: int) -> tuple[PlanarTree, ...]:
    """Cached :func:`enumerate_full_dim` with default settings."""
    return tuple(enumerate_full_dim(genus, ovals))


# --------------- Generate-then-filter cross-check ---------------

_ALL_ENDS = (V, IN, OUT)


def _free_contribution(ends: Sequence[End]) -> int:
    return 0 if V in ends else 1


@lru_cache(maxsize=None)
def _generic_upper(entry: End, dims: int, tips: int) -> tuple[tuple[UpperNode, int, int], ...]:
    """Every locally admissible upper subtree within the dimension and tip budgets.

    Returns ``(node, dims_used, tips_used)`` triples. Every leaf of an upper
    subtree is a branchpoint, so each exit costs at least one tip.
    """
    found: list[tuple[UpperNode, int, int]] = []
    for m in range(4):
        for exits in product(_ALL_ENDS, repeat=m):
            ends = (entry, *exits)
            if not locally_admissible(ends):
                continue
            own_dims = (1 if entry is V else 0) + _free_contribution(ends)
            own_tips = order_of(ends) % 2
            if own_dims > dims or own_tips + m > tips:
                continue
            found.extend(_attach_children(list(exits), (), own_dims, own_tips, dims, tips))
    return tuple(found)


def _attach_children(
    exits: list[End],
    done: tuple[tuple[End, UpperNode], ...],
    used_dims: int,
    used_tips: int,
    dims: int,
    tips: int,
) -> Iterator[tuple[UpperNode, int, int]]:
    if len(done) == len(exits):
        yield UpperNode(done), used_dims, used_tips
        return
    end = exits[len(done)]
    for child, d, t in _generic_upper(end.flipped(), dims - used_dims, tips - used_tips):
        yield from _attach_children(
            exits, (*done, (end, child)), used_dims + d, used_tips + t, dims, tips
        )


def enumerate_by_filter(
    genus: int, ovals: int, settings: Settings | None = None
) -> list[PlanarTree]:
    """Cross-check generator: all admissible local pictures, filtered globally."""
    _check_range(genus, ovals)
    settings = settings or Settings()
    budget = settings.vertex_budget(genus)
    dims_total = 2 * genus + 1
    tips_total = genus + 1 - ovals
    real_points = 2 * ovals
    found: dict[str, PlanarTree] = {}

    def grow(
        chain: list[AxisVertex], left: End | None, dims: int, tips: int, points: int
    ) -> Iterator[list[AxisVertex]]:
        for right, upper in product((None, *_ALL_ENDS), repeat=2):
            pic = AxisPicture(left, right, upper)
            if not locally_admissible(pic.ends):
                continue
            d = dims + (1 if right is V else 0) + _free_contribution(pic.ends)
            p = points + pic.order % 2
            if d > dims_total or p > real_points:
                continue
            subtrees: list[tuple[UpperNode | None, int, int]] = [(None, 0, 0)]
            if upper is not None:
                subtrees = list(_generic_upper(upper.flipped(), dims_total - d, tips_total - tips))
            for node, sd, st in subtrees:
                vertex = AxisVertex(pic, node)
                if right is None:
                    if d + sd == dims_total and p == real_points and tips + st == tips_total:
                        yield [*chain, vertex]
                    continue
                yield from grow([*chain, vertex], right.flipped(), d + sd, tips + st, p)

    for chain in grow([], None, 0, 0, 0):
        size = chain_size(chain)
        if size > budget:
            raise BudgetExceededError(budget, size)
        tree = build_tree(chain)
        if _accept(tree, genus, ovals):
            found.setdefault(canonical_form(tree), tree)
    logger.debug("Filter generator kept %d cells for g=%d k=%d", len(found), genus, ovals)
    return [found[key] for key in sorted(found)]


# --------------- Descriptions ---------------


def _describe_upper(tree: PlanarTree, v: int, entry: int) -> str:
    ends = []
    for e in tree.rotation[v]:
        edge = tree.edges[e]
        if edge.is_vertical:
            ends.append(V)
        else:
            ends.append(OUT if edge.tail == v else IN)
    kind = kind_of_upper(ends)
    name = kind.value if kind is not None else "?"
    children = [_describe_upper(tree, tree.neighbour(v, e), e) for e in tree.ends_after(v, entry)]
    return name + (f"({','.join(children)})" if children else "")


def _axis_end(tree: PlanarTree, v: int, e: int | None) -> End | None:
    if e is None:
        return None
    edge = tree.edges[e]
    if edge.is_vertical:
        return V
    return OUT if edge.tail == v else IN


def describe(tree: PlanarTree) -> str:
    """Chain word such as ``H_R X1[U1] X2a S X2b H_L``."""
    words = []
    for v in tree.axis:
        ups = tree.upper_ends(v)
        upper = _axis_end(tree, v, ups[0]) if len(ups) == 1 else None
        pic = AxisPicture(
            _axis_end(tree, v, tree.left_edge(v)), _axis_end(tree, v, tree.right_edge(v)), upper
        )
        kind = kind_of_axis(pic) if len(ups) <= 1 else None
        word = kind.value if kind is not None else "?"
        if ups:
            word += "[" + ",".join(_describe_upper(tree, tree.neighbour(v, e), e) for e in ups) + "]"
        words.append(word)
    return " ".join(words)


# --------------- Lower-dimensional strata ---------------


def enumerate_all_dims(
    genus: int,
    ovals: int,
    settings: Settings | None = None,
    rng: random.Random | None = None,
) -> list[PlanarTree]:
    """Full-dimensional cells plus every inner stratum reached through their faces.

    Every width-order cell of every codimension-one face is reduced once, so the
    closure covers each subordinate graph a face can reach. Sorted by dimension,
    then key.
    """
    settings = settings or Settings()
    rng = rng or random.Random(settings.seed)
    found: dict[str, PlanarTree] = {
        canonical_form(t): t for t in enumerate_full_dim(genus, ovals, settings)
    }
    pending = list(found.values())
    while pending:
        tree = pending.pop()
        for face in face_lattice(tree, rng):
            if face.classification is not FaceClass.INNER or face.subordinate is None:
                continue
            key = face.key or canonical_form(face.subordinate)
            if key not in found:
                found[key] = face.subordinate
                pending.append(face.subordinate)
    logger.debug("Collected %d strata for g=%d k=%d", len(found), genus, ovals)
    return sorted(found.values(), key=lambda t: (-dim_coordinate_space(t), canonical_form(t)))
