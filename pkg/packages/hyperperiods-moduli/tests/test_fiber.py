import random
from dataclasses import replace
from fractions import Fraction

import pytest

from hyperperiods.moduli.config import Settings
from hyperperiods.moduli.degenerate import reduce
from hyperperiods.moduli.errors import (
    AssemblyIncompleteError,
    TargetOutsideImageError,
    UnsupportedError,
)
from hyperperiods.moduli.fiber import (
    PieceKind,
    braid_fixed,
    braid_labels_agree,
    carve,
    fiber_report,
    format_word,
    genus_two_interfaces,
    glue,
    plot_rows,
    sample_targets,
)
from hyperperiods.moduli.graph import canonical_form, invariants, validate_topology
from hyperperiods.moduli.periods import (
    PeriodVector,
    genus_two_regions,
    lift_target,
    local_fiber,
)

F = Fraction


def test_three_oval_fiber_is_a_quadrant(g2k3):
    target = PeriodVector.of(["1/2", "1/2", "1"])
    carving, complex_, report = fiber_report(2, 3, target)

    (patch,) = carving.patches
    assert patch.graph == canonical_form(g2k3)
    assert patch.word == ()
    assert patch.dimension == 2
    assert patch.shape == "quadrant"
    kinds = sorted(p.kind.value for p in patch.pieces)
    assert kinds == ["outer", "outer", "unbounded", "unbounded"]

    assert complex_.gluings == ()
    assert report.is_cell
    assert report.components == 1
    assert report.euler_characteristics == (1,)
    assert report.patches == 1
    assert report.shapes == ("quadrant",)
    assert report.gluings == 0
    assert report.outer_sides == 2
    assert report.unbounded_sides == 2
    assert report.exhaustive


def test_truncation_scales_the_unbounded_sides():
    target = PeriodVector.of(["1/2", "1/2", "1"])
    small = carve(2, 3, target, Settings(truncation=F(1)))
    large = carve(2, 3, target, Settings(truncation=F(5)))
    width = max(x for p in small.patches[0].polygon for x in p) - min(
        x for p in small.patches[0].polygon for x in p
    )
    wide = max(x for p in large.patches[0].polygon for x in p) - min(
        x for p in large.patches[0].polygon for x in p
    )
    assert wide > width
    assert large.patches[0].shape == "quadrant"


def test_two_oval_patches():
    carving = carve(2, 2, lift_target(2, 2, ["1/2", "1/2"]))
    assert sorted(p.shape for p in carving.patches) == ["half-strip", "quadrant"]
    assert carving.orbit.exhaustive
    for patch in carving.patches:
        assert patch.dimension == 2
        assert len(patch.polygon) == len(patch.vertices)
        assert {piece.side for piece in patch.pieces} == set(range(len(patch.polygon)))


def test_threads_do_not_change_the_carving():
    target = lift_target(2, 2, ["1/2", "1/2"])
    serial = carve(2, 2, target, Settings(threads=1))
    threaded = carve(2, 2, target, Settings(threads=2))
    assert threaded.patches == serial.patches
    assert threaded.sieved == serial.sieved


def test_unbounded_pieces_sit_on_the_truncation():
    carving = carve(2, 2, lift_target(2, 2, ["1/2", "1/2"]))
    for patch in carving.patches:
        unbounded = [p for p in patch.pieces if p.kind is PieceKind.UNBOUNDED]
        assert unbounded
        assert all(p.key is None and p.canonical is None for p in unbounded)


@pytest.mark.parametrize(
    "genus, ovals, target, error",
    [
        (2, 3, ["3", "0", "-1"], TargetOutsideImageError),
        (2, 3, ["1", "1", "1"], TargetOutsideImageError),
        (2, 3, ["1", "1"], UnsupportedError),
        (4, 1, ["2", "0", "0", "0", "0"], UnsupportedError),
    ],
)
def test_carve_rejects(genus, ovals, target, error):
    with pytest.raises(error):
        carve(genus, ovals, PeriodVector.of(target))


def test_glue_refuses_higher_dimensional_patches():
    carving = carve(2, 3, PeriodVector.of(["1/2", "1/2", "1"]))
    patch = carving.patches[0]
    with pytest.raises(UnsupportedError):
        glue([replace(patch, dimension=3)])


def test_plot_rows():
    _, complex_, _ = fiber_report(2, 3, PeriodVector.of(["1/2", "1/2", "1"]))
    rows = plot_rows(complex_)
    assert rows[0] == ["patch", "graph", "braid", "index", "x", "y"]
    assert len(rows) == 1 + len(complex_.patches[0].polygon)
    assert all(r[2] == "e" for r in rows[1:])


def test_format_word():
    assert format_word(()) == "e"
    assert format_word((1, -2)) == "1 -2"


def test_interfaces_between_two_oval_regions():
    assert set(genus_two_interfaces(2)) == {"a+|b", "b|a-"}


def test_sampled_targets_stay_inside():
    rng = random.Random(5)
    region = genus_two_regions(1)["c+"]
    points = sample_targets(1, "c+", 6, rng)
    assert len(set(points)) == 6
    assert all(region.contains(p) for p in points)
    a, b = genus_two_interfaces(2)["a+|b"]
    for p in sample_targets(2, "a+|b", 3, rng):
        assert (p[0] - a[0]) * (b[1] - a[1]) == (p[1] - a[1]) * (b[0] - a[0])


def test_unknown_region_name():
    with pytest.raises(UnsupportedError):
        sample_targets(2, "z", 1, random.Random(0))


# --------------- One oval ---------------

REGION_A = ["-1/2", "7/2"]
REGION_B = ["-79/72", "209/72"]


def _midpoint(piece):
    return ((piece.start[0] + piece.end[0]) / 2, (piece.start[1] + piece.end[1]) / 2)


def _first_inner(carving):
    for i, patch in enumerate(carving.patches):
        for j, piece in enumerate(patch.pieces):
            if piece.kind is PieceKind.INNER and piece.canonical is not None:
                return i, j
    raise AssertionError("no inner piece")


def _with_piece(carving, i, j, piece):
    patches = list(carving.patches)
    pieces = list(patches[i].pieces)
    pieces[j] = piece
    patches[i] = replace(patches[i], pieces=tuple(pieces))
    return patches


def test_inner_pieces_reduce_to_valid_graphs():
    carving = carve(2, 1, lift_target(2, 1, REGION_B))
    checked = 0
    for patch in carving.patches:
        fiber = local_fiber(patch.source, patch.target)
        for piece in patch.pieces:
            if piece.kind is not PieceKind.INNER or piece.canonical is None:
                continue
            reduced = reduce(patch.source, fiber.weights(patch.ambient(_midpoint(piece))))
            assert validate_topology(reduced.tree).ok
            assert invariants(reduced.tree) == invariants(patch.source)
            assert canonical_form(reduced.tree) == piece.key
            checked += 1
    assert checked


@pytest.mark.parametrize("region", ["a", "b", "c+", "c-", "d", *sorted(genus_two_interfaces(1))])
def test_one_oval_fibers_are_cells(region):
    rng = random.Random(region)
    for point in sample_targets(1, region, 5, rng):
        carving, complex_, report = fiber_report(2, 1, lift_target(2, 1, point))
        assert report.is_cell, point
        assert report.components == 1
        assert report.euler_characteristics == (1,)
        assert len(complex_.patches) == len(carving.patches)


def test_pattern_change_inside_a_piece_is_reported():
    carving = carve(2, 2, lift_target(2, 2, ["1/2", "1/2"]))
    i, j = _first_inner(carving)
    piece = carving.patches[i].pieces[j]
    with pytest.raises(AssemblyIncompleteError) as info:
        glue(_with_piece(carving, i, j, replace(piece, canonical=None)))
    reasons = {u["reason"] for u in info.value.unmatched}
    assert "pattern changes inside" in reasons
    flagged = [u for u in info.value.unmatched if u["reason"] == "pattern changes inside"]
    assert flagged[0]["patch"] == i
    assert flagged[0]["key"] == piece.key


def test_collapsed_piece_is_reported():
    carving = carve(2, 2, lift_target(2, 2, ["1/2", "1/2"]))
    i, j = _first_inner(carving)
    piece = carving.patches[i].pieces[j]
    assert piece.canonical is not None
    start = piece.canonical[0]
    with pytest.raises(AssemblyIncompleteError) as info:
        glue(_with_piece(carving, i, j, replace(piece, canonical=(start, start))))
    assert "collapses to a point" in {u["reason"] for u in info.value.unmatched}


def test_glued_sides_carry_the_same_braid_label():
    _, complex_, _ = fiber_report(2, 1, lift_target(2, 1, REGION_A))
    assert complex_.gluings
    assert all(braid_labels_agree(complex_.patches, g) for g in complex_.gluings)
    # generic targets glue the same way with or without the label check
    assert glue(complex_.patches, fixed=True).gluings == complex_.gluings


def test_wrong_braid_label_blocks_the_gluing():
    _, complex_, _ = fiber_report(2, 1, lift_target(2, 1, REGION_A))
    gluing = next(g for g in complex_.gluings if g.left != g.right)
    patches = list(complex_.patches)
    left = patches[gluing.left]
    patches[gluing.left] = replace(left, word=(*left.word, 1))
    assert not braid_labels_agree(patches, gluing)
    assert glue(patches).gluings == complex_.gluings
    with pytest.raises(AssemblyIncompleteError) as info:
        glue(patches, fixed=True)
    assert {u["reason"] for u in info.value.unmatched} == {"braid labels disagree"}


def test_braid_fixed_targets():
    assert braid_fixed(2, 1, lift_target(2, 1, ["0", "0"]))
    assert not braid_fixed(2, 1, lift_target(2, 1, REGION_A))
    # no braid acts with two or three ovals in genus two
    assert not braid_fixed(2, 2, lift_target(2, 2, ["1/2", "1/2"]))


@pytest.mark.parametrize(
    "genus, ovals, target",
    [(2, 1, lift_target(2, 1, REGION_A)), (2, 2, lift_target(2, 2, ["1/2", "1/2"]))],
)
def test_doubling_the_truncation_keeps_the_verdict(genus, ovals, target):
    _, near_complex, near = fiber_report(genus, ovals, target)
    _, far_complex, far = fiber_report(genus, ovals, target, Settings(truncation=F(2)))
    assert far.is_cell == near.is_cell
    assert far.components == near.components
    assert sorted(far.shapes) == sorted(near.shapes)
    assert len(far_complex.gluings) == len(near_complex.gluings)
