from collections import Counter

import pytest

from hyperperiods.moduli.config import Settings
from hyperperiods.moduli.enumerate import (
    describe,
    enumerate_all_dims,
    enumerate_by_filter,
    enumerate_full_dim,
)
from hyperperiods.moduli.errors import BudgetExceededError, UnsupportedError
from hyperperiods.moduli.graph import (
    canonical_form,
    central_symmetry,
    dim_coordinate_space,
    validate_topology,
)


@pytest.mark.parametrize(
    "genus, ovals, count",
    [(2, 3, 1), (2, 2, 5), (2, 1, 9), (3, 4, 1), (3, 3, 7), (3, 2, 20), (3, 1, 28)],
)
def test_full_dimensional_counts(catalog, genus, ovals, count):
    trees = catalog(genus, ovals)
    assert len(trees) == count
    assert len({canonical_form(t) for t in trees}) == count


def test_catalog_is_sorted_by_key(catalog):
    keys = [canonical_form(t) for t in catalog(2, 1)]
    assert keys == sorted(keys)


def test_every_cell_is_valid_and_full_dimensional(catalog):
    for genus, ovals in ((2, 1), (2, 2), (3, 3)):
        for tree in catalog(genus, ovals):
            assert validate_topology(tree).ok
            assert dim_coordinate_space(tree) == 2 * genus


@pytest.mark.parametrize(
    "genus, ovals", [(2, 1), (2, 2), (2, 3), (3, 1), (3, 2), (3, 3), (3, 4)]
)
def test_filter_generator_agrees(catalog, genus, ovals):
    by_filter = [canonical_form(t) for t in enumerate_by_filter(genus, ovals)]
    assert by_filter == [canonical_form(t) for t in catalog(genus, ovals)]


def _axis_end_kinds(tree):
    words = describe(tree).split()
    return words[0].split("[")[0], words[-1].split("[")[0]


def test_one_oval_genus_three_cells_by_axis_ends(catalog):
    classes = Counter()
    for tree in catalog(3, 1):
        first, last = _axis_end_kinds(tree)
        classes[(first == "H_R", last == "H_L")] += 1
    assert classes == {(True, True): 5, (True, False): 9, (False, True): 9, (False, False): 5}


THREE_TIP_SUBTREES = ("U2(U3(U2(U1,U1)),U1)", "U2(U1,U3(U2(U1,U1)))")


def test_three_tip_subtrees_hang_from_three_axis_shapes(catalog):
    # a vertical subtree with three tips only fits when g + 1 - k = 3
    words = sorted(
        describe(t) for t in catalog(3, 1) if any(s in describe(t) for s in THREE_TIP_SUBTREES)
    )
    expected = []
    for s in THREE_TIP_SUBTREES:
        expected += [f"H_R X1[{s}] H_L", f"H_R X2a S R-b_L[{s}]", f"R-b_R[{s}] S X2b H_L"]
    assert words == sorted(expected)
    for genus, ovals in ((2, 1), (3, 2)):
        assert not any(
            s in describe(t) for t in catalog(genus, ovals) for s in THREE_TIP_SUBTREES
        )


def test_only_three_oval_cell_is_g2k3(g2k3, catalog):
    (tree,) = catalog(2, 3)
    assert canonical_form(tree) == canonical_form(g2k3)
    assert describe(tree) == "H_R X2a S X2b X2a S X2b H_L"


def test_g6k2_chain_word(g6k2):
    assert describe(g6k2).startswith("H_R X1[U2(")
    assert describe(g6k2).endswith("X3[U3(U2(U1,U1))] H_L")


def test_tiny_budget_stops_enumeration():
    with pytest.raises(BudgetExceededError) as exc:
        enumerate_full_dim(2, 1, Settings(vertex_budget_factor=1))
    assert exc.value.budget == 3
    assert exc.value.size > 3


@pytest.mark.parametrize("genus, ovals", [(2, 0), (2, 4), (-1, 1)])
def test_out_of_range_invariants(genus, ovals):
    with pytest.raises(UnsupportedError):
        enumerate_full_dim(genus, ovals)


def test_all_dims_for_three_ovals_is_just_the_cell(g2k3):
    # every face of the only cell merges branchpoints
    trees = enumerate_all_dims(2, 3)
    assert [canonical_form(t) for t in trees] == [canonical_form(g2k3)]


def test_all_dims_starts_with_the_full_cells(catalog):
    trees = enumerate_all_dims(2, 2)
    full = {canonical_form(t) for t in catalog(2, 2)}
    assert {canonical_form(t) for t in trees[: len(full)]} == full
    dims = [dim_coordinate_space(t) for t in trees]
    assert dims == sorted(dims, reverse=True)


def test_one_oval_example_chain_word(g2k1, catalog):
    assert describe(g2k1) == "H_R X2a S X6_L[U2(U1,U1)]"
    assert canonical_form(g2k1) in {canonical_form(t) for t in catalog(2, 1)}


def test_one_oval_cells_up_to_central_symmetry(g2k1_cells, catalog):
    keys = {canonical_form(t) for t in catalog(2, 1)}
    shipped = {canonical_form(t) for t in g2k1_cells.values()}
    mirrored = {canonical_form(central_symmetry(t)) for t in g2k1_cells.values()}
    assert shipped | mirrored == keys
    assert len(shipped & mirrored) == 3
    assert describe(g2k1_cells["two_crosses"]) == "H_R X1[U1] X1[U1] H_L"


def test_two_oval_fixtures_are_catalog_cells(g2k2_half_strip, g2k2_quadrant, catalog):
    keys = {canonical_form(t) for t in catalog(2, 2)}
    for tree in (g2k2_half_strip, g2k2_quadrant):
        assert canonical_form(tree) in keys
        assert canonical_form(central_symmetry(tree)) in keys
    assert describe(g2k2_half_strip) == "H_R X1[U1] X2a S X2b H_L"
