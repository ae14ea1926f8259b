import random
from fractions import Fraction

import pytest

from hyperperiods.moduli.degenerate import (
    FaceClass,
    contract,
    extend,
    face_lattice,
    pattern_cells,
    reduce,
    zero_edges,
    zip_edge,
)
from hyperperiods.moduli.enumerate import full_dim_catalog
from hyperperiods.moduli.errors import OuterFaceError, PreconditionError
from hyperperiods.moduli.graph import (
    Half,
    WeightAssignment,
    canonical_form,
    canonical_weights,
    dim_coordinate_space,
    invariants,
    is_branchpoint,
    ord,
    random_strict_weights,
    random_weak_weights,
    validate_topology,
    validate_weights,
)

F = Fraction


def _g2k3_weights(tree, widths):
    third = F(1, 3)
    return WeightAssignment.symmetric(tree, {0: third, 3: third, 6: third}, widths)


def test_strict_weights_need_no_reduction(catalog, rng):
    for tree in catalog(2, 2):
        weights = random_strict_weights(tree, rng)
        result = reduce(tree, weights)
        assert result.trace == (0,)
        assert canonical_form(result.tree) == canonical_form(tree)
        assert result.members == tuple(frozenset((v,)) for v in tree.vertices)


def test_merging_branchpoints_is_an_outer_face(g2k3):
    weights = _g2k3_weights(g2k3, {2: F(0), 5: F(1)})
    assert zero_edges(g2k3, weights)[0] == [1, 2]
    with pytest.raises(OuterFaceError) as exc:
        reduce(g2k3, weights)
    assert exc.value.members


def test_wrong_edge_kind_is_refused(g2k3):
    weights = _g2k3_weights(g2k3, {2: F(1), 5: F(1)})
    with pytest.raises(PreconditionError):
        contract(g2k3, weights, 0)
    with pytest.raises(PreconditionError):
        zip_edge(g2k3, weights, 1)


def test_three_oval_faces_are_all_outer(g2k3):
    faces = face_lattice(g2k3, random.Random(3))
    assert len(faces) == 7
    assert sorted(f.kind for f in faces) == ["H"] * 3 + ["W"] * 4
    assert all(f.classification is FaceClass.OUTER for f in faces)
    assert all(f.subordinate is None for f in faces)


@pytest.mark.parametrize("ovals", [1, 2])
def test_weak_weights_reduce_to_strict(catalog, ovals):
    """Either two branchpoints collide, or the result is a strict graph of the same type."""
    rng = random.Random(7 * ovals)
    for tree in catalog(2, ovals):
        for _ in range(4):
            weights = random_weak_weights(tree, rng)
            try:
                result = reduce(tree, weights)
            except OuterFaceError:
                continue
            assert validate_topology(result.tree).ok
            assert zero_edges(result.tree, result.weights) == ([], [])
            assert invariants(result.tree) == invariants(tree)
            assert result.trace[-1] == 0


def test_inner_faces_name_their_subordinate(catalog):
    for tree in catalog(2, 1):
        for face in face_lattice(tree, random.Random(11)):
            if face.classification is FaceClass.INNER:
                assert face.subordinate is not None
                assert face.key == canonical_form(face.subordinate)
                assert invariants(face.subordinate) == (2, 1)


# --------------- Width-order cells ---------------


def _up(tree, v):
    return tree.vertex_mirror[v] if tree.halves[v] is Half.LOWER else v


def test_three_oval_cells(g2k3):
    # the two saddles have incomparable widths
    cells = pattern_cells(g2k3)
    assert len(cells) == 2
    assert cells[0] != cells[1]
    levelled = [len(pattern_cells(g2k3, e.id)) for e in g2k3.edges if not e.is_vertical]
    assert 1 in levelled
    assert max(levelled) <= 2


@pytest.mark.parametrize("ovals", [1, 2])
def test_cells_follow_the_width_order(catalog, ovals):
    for tree in catalog(2, ovals):
        cells = pattern_cells(tree)
        assert cells
        assert len({tuple(sorted(c.items())) for c in cells}) == len(cells)
        for widths in cells:
            assert all(widths[v] == 0 for v in widths if tree.d_vert(v))
            nonzero = [w for w in widths.values() if w]
            assert len(set(nonzero)) == len(nonzero)
            for e in tree.edges:
                if e.is_vertical or not tree.in_closed_upper(e.id):
                    continue
                assert widths[_up(tree, e.head)] > widths[_up(tree, e.tail)]


def test_face_samples_sit_on_their_faces(catalog):
    for tree in catalog(2, 1):
        faces = face_lattice(tree, random.Random(5))
        keys = [(f.kind, f.coordinate, f.classification, f.key) for f in faces]
        assert len(keys) == len(set(keys))
        for face in faces:
            if face.kind == "H":
                assert face.sample.heights[face.coordinate] == 0
            else:
                edge = tree.edges[face.coordinate]
                assert face.sample.widths[edge.tail] == face.sample.widths[edge.head]
            assert all(face.sample.widths[v] > 0 for v in face.order)


# --------------- Degeneration properties ---------------


def _eliminate_first(tree, weights, edge):
    horizontal, _ = zero_edges(tree, weights)
    step = (contract if edge in horizontal else zip_edge)(tree, weights, edge)
    rest = reduce(step.tree, step.weights)
    return canonical_form(rest.tree), canonical_weights(rest.tree, rest.weights)


def test_random_weak_instances_reduce_cleanly():
    trees = [
        t
        for genus, ovals in [(2, 1), (2, 2), (2, 3), (3, 1), (3, 2), (3, 3), (3, 4)]
        for t in full_dim_catalog(genus, ovals)
    ]
    rng = random.Random(500)
    reduced = commuted = 0
    for i in range(500):
        tree = trees[i % len(trees)]
        weights = random_weak_weights(tree, rng)
        try:
            result = reduce(tree, weights)
        except OuterFaceError:
            continue
        reduced += 1
        assert all(a > b for a, b in zip(result.trace, result.trace[1:], strict=False))
        assert validate_weights(result.tree, result.weights).ok
        assert invariants(result.tree) == invariants(tree)
        for v, members in enumerate(result.members):
            assert ord(result.tree, v) == sum(ord(tree, m) for m in members)

        horizontal, vertical = zero_edges(tree, weights)
        edges = horizontal + vertical
        if len(edges) < 2:
            continue
        first = edges[0]
        second = next((e for e in reversed(edges) if e not in (first, tree.edge_mirror[first])), None)
        if second is None:
            continue
        assert _eliminate_first(tree, weights, first) == _eliminate_first(tree, weights, second)
        commuted += 1
    assert reduced > 100
    assert commuted > 20


def _zero_column(tree, column, widths):
    heights = {e: F(0) if e == column else F(1) for e in tree.vertical_columns}
    return WeightAssignment.symmetric(tree, heights, widths)


def _endpoint_groups(tree, column):
    a, b = tree.edges[column].ends
    groups = [{a, b}]
    mirrored = {tree.vertex_mirror[a], tree.vertex_mirror[b]}
    if mirrored & groups[0]:
        groups[0] |= mirrored
    else:
        groups.append(mirrored)
    return sorted(sorted(g) for g in groups)


def test_zipping_with_distinct_widths_only_joins_the_strip_ends(catalog):
    zipped = 0
    for tree in catalog(2, 1) + catalog(2, 2):
        widths = pattern_cells(tree)[0]
        for column in tree.vertical_columns:
            try:
                result = zip_edge(tree, _zero_column(tree, column, widths), column)
            except OuterFaceError:
                continue
            merged = sorted(sorted(m) for m in result.members if len(m) > 1)
            assert merged == _endpoint_groups(tree, column)
            assert validate_topology(result.tree).ok
            zipped += 1
    assert zipped


def test_zipping_joins_sides_at_equal_width(catalog):
    """Opposite strip sides at the same width meet in one vertex."""
    joined = 0
    for tree in catalog(2, 1) + catalog(2, 2) + catalog(3, 1):
        for column in tree.vertical_columns:
            strip = extend(tree).strips(column)[0]
            if len(strip.first_side) < 2 or len(strip.second_side) < 2:
                continue
            x, y = strip.first_side[1], strip.second_side[1]
            if is_branchpoint(tree, x) and is_branchpoint(tree, y):
                continue
            ux, uy = _up(tree, x), _up(tree, y)
            if ux == uy or tree.edge_between(ux, uy) is not None:
                continue
            cell = next(
                (c for c in pattern_cells(tree) if c[ux] and c[uy] and abs(c[ux] - c[uy]) == 1),
                None,
            )
            if cell is None:
                continue
            widths = {**cell, ux: min(cell[ux], cell[uy]), uy: min(cell[ux], cell[uy])}
            try:
                result = zip_edge(tree, _zero_column(tree, column, widths), column)
            except OuterFaceError:
                continue
            assert any({x, y} <= m for m in result.members)
            joined += 1
    assert joined


def test_subordinate_chain_down_to_a_graph_without_inner_faces(catalog):
    rng = random.Random(13)

    def inner(tree):
        return [
            f.subordinate
            for f in face_lattice(tree, rng)
            if f.classification is FaceClass.INNER and f.subordinate is not None
        ]

    chains = set()
    for tree in catalog(2, 1):
        for sub in inner(tree):
            for last in inner(sub):
                if not inner(last):
                    chains.add(tuple(dim_coordinate_space(t) for t in (tree, sub, last)))
    assert (4, 3, 2) in chains


def test_half_strip_cell_faces(g2k2_half_strip):
    tree = g2k2_half_strip
    faces = face_lattice(tree, random.Random(8))
    joining = [
        e for e in tree.vertical_columns if all(is_branchpoint(tree, v) for v in tree.edges[e].ends)
    ]
    assert joining
    for face in faces:
        if face.kind == "H" and face.coordinate in joining:
            assert face.classification is FaceClass.OUTER
    assert any(f.classification is FaceClass.INNER for f in faces)
