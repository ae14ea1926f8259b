import json
from fractions import Fraction

import pytest

from hyperperiods.moduli.errors import MalformedGraphError
from hyperperiods.moduli.fiber import fiber_report
from hyperperiods.moduli.graph import WeightAssignment, canonical_form
from hyperperiods.moduli.periods import PeriodVector, image_polytope
from hyperperiods.moduli.serialization import (
    complex_from_dict,
    complex_to_dict,
    dumps,
    load_graph,
    load_weights,
    parse_vector,
    polytope_to_dict,
    rational,
    tree_to_document,
    weights_to_document,
)

F = Fraction


def test_rationals_are_strings():
    assert rational(F(-3, 6)) == "-1/2"
    assert rational(2) == "2"
    assert parse_vector(" 1/2, -3 ,0") == (F(1, 2), F(-3), F(0))


@pytest.mark.parametrize("text", ["", "1/0", "a,b", " , "])
def test_bad_vectors(text):
    with pytest.raises(MalformedGraphError):
        parse_vector(text)


def test_graph_file_round_trip(tmp_path, g6k2):
    path = tmp_path / "g.json"
    path.write_text(dumps(tree_to_document(g6k2)))
    assert canonical_form(load_graph(path)) == canonical_form(g6k2)


def test_invalid_json_file(tmp_path):
    path = tmp_path / "g.json"
    path.write_text("{not json")
    with pytest.raises(MalformedGraphError):
        load_graph(path)


def test_weights_file(tmp_path, g2k3):
    weights = WeightAssignment.symmetric(
        g2k3, {0: F(1, 2), 3: F(1, 4), 6: F(1, 4)}, {2: F(1), 5: F(7, 3)}
    )
    doc = weights_to_document(g2k3, weights)
    assert doc == {"heights": {"0": "1/2", "3": "1/4", "6": "1/4"}, "widths": {"2": "1", "5": "7/3"}}
    path = tmp_path / "w.json"
    path.write_text(json.dumps(doc))
    loaded = load_weights(g2k3, path)
    assert loaded.height_vector(g2k3) == weights.height_vector(g2k3)
    assert loaded.width_vector(g2k3) == weights.width_vector(g2k3)


def test_weights_with_garbage(tmp_path, g2k3):
    path = tmp_path / "w.json"
    path.write_text(json.dumps({"heights": {"0": "half"}}))
    with pytest.raises(MalformedGraphError):
        load_weights(g2k3, path)


def test_polytope_document(g2k3):
    doc = polytope_to_dict(image_polytope(g2k3))
    assert sorted(doc["vertices"]) == [["0", "0"], ["0", "2"], ["2", "0"]]
    assert len(doc["facets"]) == 3
    assert doc["equalities"] == []


def test_complex_round_trip():
    _, complex_, _ = fiber_report(2, 3, PeriodVector.of(["1/2", "1/2", "1"]))
    doc = json.loads(dumps(complex_to_dict(complex_)))
    assert complex_from_dict(doc) == complex_
    assert complex_from_dict(doc).patches[0].source == complex_.patches[0].source
