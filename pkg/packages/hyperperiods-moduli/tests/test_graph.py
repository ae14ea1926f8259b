import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hyperperiods.moduli.enumerate import full_dim_catalog
from hyperperiods.moduli.errors import MalformedGraphError
from hyperperiods.moduli.graph import (
    WeightAssignment,
    WeightMode,
    canonical_form,
    canonical_weights,
    central_symmetry,
    dim_coordinate_space,
    invariants,
    ord,
    random_strict_weights,
    random_weak_weights,
    relabel,
    relabel_weights,
    validate_topology,
    validate_weights,
)
from hyperperiods.moduli.serialization import tree_from_document, tree_to_document

F = Fraction


def test_g6k2_orders_along_the_axis(g6k2):
    assert [ord(g6k2, v) for v in g6k2.axis] == [-1, 2, -1, 2, -1, 0, -1]


def test_fixture_graphs_are_valid(g2k3, g6k2):
    for tree in (g2k3, g6k2):
        report = validate_topology(tree)
        assert report.ok, report.messages
        assert set(report.checks) == {"T1", "T2", "T3", "sigma"}


def test_fixture_invariants_and_dimension(g2k3, g6k2):
    assert invariants(g2k3) == (2, 3)
    assert g2k3.free_vertices == (2, 5)
    assert dim_coordinate_space(g2k3) == 4
    assert dim_coordinate_space(g6k2) == 12


def test_catalog_dimension_is_twice_the_genus(catalog):
    for k in (1, 2, 3):
        for tree in catalog(2, k):
            assert invariants(tree) == (2, k)
            assert dim_coordinate_space(tree) == 4


def test_document_round_trip_keeps_the_key(g6k2):
    again = tree_from_document(tree_to_document(g6k2))
    assert again == g6k2
    assert canonical_form(again) == canonical_form(g6k2)


def test_lonely_vertex_violates_the_order_bound():
    doc = {
        "format": "graph",
        "halves": ["real"],
        "edges": [],
        "rotation": [[]],
        "vertex_mirror": [0],
        "edge_mirror": [],
        "axis": [0],
    }
    with pytest.raises(MalformedGraphError) as exc:
        tree_from_document(doc)
    assert exc.value.report is not None
    assert exc.value.report.checks["T3"] is False
    assert tree_from_document(doc, validate=False).n_vertices == 1


@pytest.mark.parametrize(
    "doc",
    [
        {"format": "graph", "halves": ["sideways"], "edges": [], "rotation": [[]],
         "vertex_mirror": [0], "edge_mirror": [], "axis": [0]},
        {"format": "graph", "halves": ["real"], "edges": [], "rotation": [[]]},
        {"format": "chain", "chain": [{"kind": "H_R"}, {"kind": "S"}, {"kind": "H_L"}]},
        {"format": "chain", "chain": [{"kind": "U1"}]},
        {"format": "chain", "chain": [{"kind": "X1"}]},
    ],
)
def test_broken_documents(doc):
    with pytest.raises(MalformedGraphError):
        tree_from_document(doc)


def test_random_strict_weights_are_strict(catalog, rng):
    for k in (1, 2, 3):
        for tree in catalog(2, k):
            report = validate_weights(tree, random_strict_weights(tree, rng))
            assert report.ok, report.messages


def test_random_weak_weights_are_weak(catalog, rng):
    for tree in catalog(2, 2):
        weights = random_weak_weights(tree, rng)
        assert validate_weights(tree, weights, WeightMode.WEAK).ok


def test_zero_weights_are_weak_only(g2k3):
    weights = WeightAssignment.symmetric(g2k3, {0: F(1, 2), 3: F(1, 2), 6: F(0)}, {2: 0, 5: 0})
    strict = validate_weights(g2k3, weights, WeightMode.STRICT)
    assert strict.checks == {"W1": False, "W2": False, "sigma": True}
    weak = validate_weights(g2k3, weights, WeightMode.WEAK)
    assert weak.ok
    assert set(weak.checks) == {"W1*", "W2*", "sigma"}


def test_unnormalized_heights_fail(g2k3):
    weights = WeightAssignment.symmetric(g2k3, {0: F(1), 3: F(1), 6: F(1)}, {2: 1, 5: 1})
    report = validate_weights(g2k3, weights)
    assert not report.checks["W2"]
    assert any("normalization" in m for m in report.messages)


def test_g2k3_is_centrally_symmetric(g2k3):
    image = central_symmetry(g2k3)
    assert validate_topology(image).ok
    assert canonical_form(image) == canonical_form(g2k3)


def test_catalog_closed_under_central_symmetry(catalog):
    for k in (1, 2, 3):
        keys = {canonical_form(t) for t in catalog(2, k)}
        assert {canonical_form(central_symmetry(t)) for t in catalog(2, k)} == keys


@settings(max_examples=30, deadline=None)
@given(st.data())
def test_canonical_form_ignores_ids(data):
    tree = data.draw(st.sampled_from(full_dim_catalog(2, 1)))
    vmap = data.draw(st.permutations(range(tree.n_vertices)))
    emap = data.draw(st.permutations(range(len(tree.edges))))
    moved = relabel(tree, vmap, emap)
    assert validate_topology(moved).ok
    assert canonical_form(moved) == canonical_form(tree)

    weights = random_strict_weights(tree, random.Random(data.draw(st.integers(0, 10**6))))
    assert canonical_weights(moved, relabel_weights(weights, vmap, emap)) == canonical_weights(
        tree, weights
    )


def test_one_oval_example_graph(g2k1):
    assert validate_topology(g2k1).ok
    assert invariants(g2k1) == (2, 1)
    assert dim_coordinate_space(g2k1) == 4
    # one real column, two upper columns of weight two, two free vertices
    assert sorted(g2k1.column_weight(e) for e in g2k1.vertical_columns) == [1, 2, 2]
    assert len(g2k1.free_vertices) == 2
    assert [ord(g2k1, v) for v in g2k1.axis] == [-1, -1, 2, 2]
    off_axis = sorted(ord(g2k1, v) for v in g2k1.vertices if v not in g2k1.axis)
    assert off_axis == [-1, -1, -1, -1, 0, 0]


def test_one_oval_cells_simplex_dimensions(g2k1_cells):
    assert len(g2k1_cells) == 6
    simplex = sorted(len(t.vertical_columns) - 1 for t in g2k1_cells.values())
    assert simplex == [2, 2, 2, 3, 3, 4]
    for tree in g2k1_cells.values():
        assert validate_topology(tree).ok
        assert invariants(tree) == (2, 1)
        assert dim_coordinate_space(tree) == 4


def test_two_oval_fixtures(g2k2_half_strip, g2k2_quadrant):
    for tree in (g2k2_half_strip, g2k2_quadrant):
        assert validate_topology(tree).ok
        assert invariants(tree) == (2, 2)
        assert dim_coordinate_space(tree) == 4
        assert canonical_form(central_symmetry(tree)) != canonical_form(tree)
    assert len(g2k2_half_strip.vertical_columns) == 4
    assert len(g2k2_quadrant.vertical_columns) == 3
