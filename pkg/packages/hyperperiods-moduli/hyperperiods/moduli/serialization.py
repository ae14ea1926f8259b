"""JSON documents for graphs, weights, polytopes and fiber results.

Every rational is written as a ``"p/q"`` string in units of pi. Graph documents
come in two formats: ``"graph"`` lists the whole symmetric tree, ``"chain"``
lists the real axis left to right with the upper subtree hanging from each
vertex and is expanded with the mirror images on load.
"""

from __future__ import annotations

import json
from collections.abc import Mapping, Sequence
from fractions import Fraction
from pathlib import Path
from typing import Any

from .braid import Orbit, OrbitPoint
from .builder import AxisVertex, UpperNode, build_tree
from .errors import MalformedGraphError
from .fiber import FiberComplex, Gluing, Patch, Piece, PieceKind, TopologyReport
from .graph import (
    Edge,
    EdgeKind,
    Half,
    PlanarTree,
    WeightAssignment,
    validate_topology,
)
from .kinds import AXIS_PICTURES, AxisPicture, End, StableVertexKind
from .periods import PeriodVector
from .polytope import Polytope

# --------------- Scalars ---------------


def fraction(value: Any) -> Fraction:
    try:
        return Fraction(value)
    except (TypeError, ValueError, ZeroDivisionError) as e:
        raise MalformedGraphError(f"Not a rational 'p/q': {value!r}") from e


def rational(x: Fraction | int) -> str:
    return str(Fraction(x))


def vector(values: Sequence[Fraction]) -> list[str]:
    return [rational(x) for x in values]


def parse_vector(text: str) -> tuple[Fraction, ...]:
    """``"1/2,3/4"`` as a tuple of fractions."""
    parts = [p.strip() for p in text.split(",") if p.strip()]
    if not parts:
        raise MalformedGraphError(f"Empty vector {text!r}")
    return tuple(fraction(p) for p in parts)


def dumps(obj: Any) -> str:
    return json.dumps(obj, indent=2, sort_keys=True)


# --------------- Graphs ---------------


def tree_to_document(tree: PlanarTree) -> dict[str, Any]:
    return {
        "format": "graph",
        "halves": [h.value for h in tree.halves],
        "edges": [
            {"id": e.id, "kind": e.kind.value, "ends": list(e.ends)} for e in tree.edges
        ],
        "rotation": [list(r) for r in tree.rotation],
        "vertex_mirror": list(tree.vertex_mirror),
        "edge_mirror": list(tree.edge_mirror),
        "axis": list(tree.axis),
    }


def _node(doc: Mapping[str, Any]) -> UpperNode:
    exits = []
    for end, child in doc.get("exits", []):
        exits.append((End(end), _node(child)))
    return UpperNode(tuple(exits))


def _end(value: str | None) -> End | None:
    return End(value) if value is not None else None


def _picture(item: Mapping[str, Any]) -> AxisPicture:
    if "kind" not in item:
        return AxisPicture(_end(item.get("left")), _end(item.get("right")), _end(item.get("upper")))
    kind = StableVertexKind(item["kind"])
    if kind not in AXIS_PICTURES:
        raise MalformedGraphError(f"{kind.value} is not an axis kind")
    return AXIS_PICTURES[kind]


def _chain(doc: Mapping[str, Any]) -> PlanarTree:
    chain = []
    for item in doc["chain"]:
        subtree = item.get("subtree")
        chain.append(AxisVertex(_picture(item), _node(subtree) if subtree is not None else None))
    return build_tree(chain)


def tree_from_document(doc: Mapping[str, Any], validate: bool = True) -> PlanarTree:
    """Build and, by default, validate a tree; broken documents raise ``MalformedGraphError``."""
    try:
        if doc.get("format", "graph") == "chain":
            tree = _chain(doc)
        else:
            edges = []
            for i, e in enumerate(doc["edges"]):
                if e.get("id", i) != i:
                    raise MalformedGraphError(f"Edge ids must be 0..n-1, got {e['id']} at {i}")
                a, b = e["ends"]
                edges.append(Edge(i, EdgeKind(e["kind"]), (int(a), int(b))))
            tree = PlanarTree(
                halves=tuple(Half(h) for h in doc["halves"]),
                edges=tuple(edges),
                rotation=tuple(tuple(int(x) for x in r) for r in doc["rotation"]),
                vertex_mirror=tuple(int(x) for x in doc["vertex_mirror"]),
                edge_mirror=tuple(int(x) for x in doc["edge_mirror"]),
                axis=tuple(int(x) for x in doc["axis"]),
            )
    except MalformedGraphError:
        raise
    except (KeyError, TypeError, ValueError, IndexError) as e:
        raise MalformedGraphError(f"Broken graph document: {e!r}") from e
    if validate:
        report = validate_topology(tree)
        if not report.ok:
            raise MalformedGraphError("Graph violates the tree axioms", report)
    return tree


def load_graph(path: str | Path, validate: bool = True) -> PlanarTree:
    try:
        doc = json.loads(Path(path).read_text())
    except json.JSONDecodeError as e:
        raise MalformedGraphError(f"{path} is not valid JSON: {e}") from e
    return tree_from_document(doc, validate)


# --------------- Weights ---------------


def weights_to_document(tree: PlanarTree, weights: WeightAssignment) -> dict[str, Any]:
    return {
        "heights": {str(e): rational(weights.heights[e]) for e in tree.vertical_columns},
        "widths": {str(v): rational(weights.widths.get(v, 0)) for v in tree.free_vertices},
    }


def weights_from_document(tree: PlanarTree, doc: Mapping[str, Any]) -> WeightAssignment:
    try:
        heights = {int(e): fraction(h) for e, h in doc.get("heights", {}).items()}
        widths = {int(v): fraction(w) for v, w in doc.get("widths", {}).items()}
    except (AttributeError, ValueError) as e:
        raise MalformedGraphError(f"Broken weights document: {e!r}") from e
    return WeightAssignment.symmetric(tree, heights, widths)


def load_weights(tree: PlanarTree, path: str | Path) -> WeightAssignment:
    try:
        doc = json.loads(Path(path).read_text())
    except json.JSONDecodeError as e:
        raise MalformedGraphError(f"{path} is not valid JSON: {e}") from e
    return weights_from_document(tree, doc)


# --------------- Polytopes and orbits ---------------


def polytope_to_dict(polytope: Polytope) -> dict[str, Any]:
    return {
        "vertices": [vector(v) for v in polytope.vertices],
        "facets": [
            {"normal": vector(h.normal), "offset": rational(h.offset)} for h in polytope.facets
        ],
        "equalities": [
            {"normal": vector(h.normal), "offset": rational(h.offset)}
            for h in polytope.equalities
        ],
    }


def orbit_to_dict(orbit: Orbit) -> dict[str, Any]:
    return {
        "points": [{"word": list(p.word), "image": vector(p.image.values)} for p in orbit.points],
        "exhaustive": orbit.exhaustive,
        "word_length_cap": orbit.word_length_cap,
    }


def orbit_from_dict(doc: Mapping[str, Any]) -> Orbit:
    points = tuple(
        OrbitPoint(tuple(int(x) for x in p["word"]), PeriodVector.of(p["image"]))
        for p in doc["points"]
    )
    return Orbit(points, bool(doc["exhaustive"]), doc.get("word_length_cap"))


# --------------- Fibers ---------------


def _point2(doc: Sequence[Any]) -> tuple[Fraction, Fraction]:
    return (fraction(doc[0]), fraction(doc[1]))


def piece_to_dict(piece: Piece) -> dict[str, Any]:
    out: dict[str, Any] = {
        "kind": piece.kind.value,
        "side": piece.side,
        "start": vector(piece.start),
        "end": vector(piece.end),
    }
    if piece.key is not None:
        out["key"] = piece.key
    if piece.canonical is not None:
        out["canonical"] = [vector(piece.canonical[0]), vector(piece.canonical[1])]
    return out


def piece_from_dict(doc: Mapping[str, Any]) -> Piece:
    canonical = doc.get("canonical")
    return Piece(
        PieceKind(doc["kind"]),
        int(doc["side"]),
        _point2(doc["start"]),
        _point2(doc["end"]),
        doc.get("key"),
        (
            tuple(fraction(x) for x in canonical[0]),
            tuple(fraction(x) for x in canonical[1]),
        )
        if canonical is not None
        else None,
    )


def patch_to_dict(patch: Patch) -> dict[str, Any]:
    out: dict[str, Any] = {
        "graph": patch.graph,
        "braid": list(patch.word),
        "target": vector(patch.target.values),
        "stratum": patch.stratum,
        "dimension": patch.dimension,
        "vertices": [vector(v) for v in patch.vertices],
        "polygon": [vector(p) for p in patch.polygon],
        "pieces": [piece_to_dict(p) for p in patch.pieces],
        "shape": patch.shape,
        "identity": vector(patch.identity),
    }
    if patch.source is not None:
        out["source"] = tree_to_document(patch.source)
    return out


def patch_from_dict(doc: Mapping[str, Any]) -> Patch:
    return Patch(
        graph=doc["graph"],
        word=tuple(int(x) for x in doc["braid"]),
        target=PeriodVector.of(doc["target"]),
        stratum=doc["stratum"],
        dimension=int(doc["dimension"]),
        vertices=tuple(tuple(fraction(x) for x in v) for v in doc["vertices"]),
        polygon=tuple(_point2(p) for p in doc["polygon"]),
        pieces=tuple(piece_from_dict(p) for p in doc["pieces"]),
        shape=doc["shape"],
        identity=tuple(fraction(x) for x in doc.get("identity", [])),
        source=tree_from_document(doc["source"], validate=False) if "source" in doc else None,
    )


def complex_to_dict(complex_: FiberComplex) -> dict[str, Any]:
    return {
        "patches": [patch_to_dict(p) for p in complex_.patches],
        "gluings": [
            {
                "key": g.key,
                "left": g.left,
                "right": g.right,
                "left_segment": [vector(p) for p in g.left_segment],
                "right_segment": [vector(p) for p in g.right_segment],
            }
            for g in complex_.gluings
        ],
        "overlaps": list(complex_.overlaps),
    }


def complex_from_dict(doc: Mapping[str, Any]) -> FiberComplex:
    gluings = tuple(
        Gluing(
            g["key"],
            int(g["left"]),
            int(g["right"]),
            (_point2(g["left_segment"][0]), _point2(g["left_segment"][1])),
            (_point2(g["right_segment"][0]), _point2(g["right_segment"][1])),
        )
        for g in doc["gluings"]
    )
    return FiberComplex(
        tuple(patch_from_dict(p) for p in doc["patches"]),
        gluings,
        tuple(doc.get("overlaps", [])),
    )


def report_from_dict(doc: Mapping[str, Any]) -> TopologyReport:
    return TopologyReport(
        components=int(doc["components"]),
        euler_characteristics=tuple(int(x) for x in doc["chi"]),
        is_cell=bool(doc["is_cell"]),
        dual_tree=bool(doc["dual_tree"]),
        patches=int(doc["patches"]),
        gluings=int(doc["gluings"]),
        unbounded_sides=int(doc["unbounded_sides"]),
        outer_sides=int(doc["outer_sides"]),
        multiplicity_ok=bool(doc["multiplicity_ok"]),
        collapsible=bool(doc["collapsible"]),
        shapes=tuple(doc.get("shapes", [])),
        sieved=tuple(tuple(int(x) for x in w) for w in doc.get("sieved", [])),
        exhaustive=bool(doc.get("exhaustive", True)),
    )
