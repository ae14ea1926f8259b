"""``hyperperiods`` command line.

Every subcommand prints a deterministic JSON document (or CSV, or a count) on
stdout. Domain failures exit with status 1 and a message on stderr; usage
errors exit with status 2.
"""

from __future__ import annotations

import argparse
import csv
import logging
import random
import sys
from collections.abc import Sequence
from fractions import Fraction
from typing import Any, TextIO

from .braid import orbit_in_region
from .config import Settings
from .degenerate import face_lattice, reduce
from .enumerate import describe, enumerate_all_dims, enumerate_by_filter, enumerate_full_dim
from .errors import AssemblyIncompleteError, HyperperiodsError, MalformedGraphError
from .fiber import canonical_region, fiber_report, plot_rows
from .graph import (
    PlanarTree,
    WeightMode,
    canonical_form,
    dim_coordinate_space,
    invariants,
    validate_topology,
    validate_weights,
)
from .periods import image_polytope, lift_target, period_map
from .serialization import (
    complex_to_dict,
    dumps,
    load_graph,
    load_weights,
    parse_vector,
    polytope_to_dict,
    rational,
    tree_to_document,
    vector,
    weights_to_document,
)

logger = logging.getLogger(__name__)


def _labyrinth(text: str | None) -> dict[int, int] | None:
    """``"v=i,w=j"`` as a labyrinth choice."""
    if not text:
        return None
    out = {}
    for part in text.split(","):
        v, _, i = part.partition("=")
        out[int(v)] = int(i)
    return out


def _graph_entry(tree: PlanarTree) -> dict[str, Any]:
    g, k = invariants(tree)
    return {
        "key": canonical_form(tree),
        "chain": describe(tree),
        "genus": g,
        "ovals": k,
        "dimension": dim_coordinate_space(tree),
        "graph": tree_to_document(tree),
    }


# --------------- Subcommands ---------------


def _enumerate(args: argparse.Namespace, settings: Settings) -> Any:
    if args.all_dims:
        trees = enumerate_all_dims(args.genus, args.ovals, settings)
    elif args.by_filter:
        trees = enumerate_by_filter(args.genus, args.ovals, settings)
    else:
        trees = enumerate_full_dim(args.genus, args.ovals, settings)
    if args.count_only or args.format == "count":
        return len(trees)
    return [_graph_entry(t) for t in trees]


def _validate(args: argparse.Namespace, settings: Settings) -> Any:
    tree = load_graph(args.graph, validate=False)
    report = validate_topology(tree)
    out: dict[str, Any] = {"topology": report.to_dict()}
    if not report.ok:
        raise MalformedGraphError("Graph violates the tree axioms", report)
    if args.weights:
        weights = validate_weights(tree, load_weights(tree, args.weights), WeightMode(args.mode))
        if not weights.ok:
            raise MalformedGraphError(f"Weights violate the {args.mode} axioms", weights)
        out["weights"] = weights.to_dict()
    return out


def _faces(args: argparse.Namespace, settings: Settings) -> Any:
    tree = load_graph(args.graph)
    return [
        {
            "kind": f.kind,
            "coordinate": f.coordinate,
            "class": f.classification.value,
            "subordinate": f.key,
            "order": list(f.order),
            "sample": weights_to_document(tree, f.sample),
        }
        for f in face_lattice(tree, random.Random(settings.seed))
    ]


def _reduce(args: argparse.Namespace, settings: Settings) -> Any:
    tree = load_graph(args.graph)
    weights = load_weights(tree, args.weights)
    rng = random.Random(settings.seed) if args.random_order else None
    result = reduce(tree, weights, rng)
    return {
        "key": canonical_form(result.tree),
        "chain": describe(result.tree),
        "graph": tree_to_document(result.tree),
        "weights": weights_to_document(result.tree, result.weights),
        "members": [sorted(m) for m in result.members],
        "edge_origin": list(result.edge_origin),
        "trace": list(result.trace),
    }


def _periods(args: argparse.Namespace, settings: Settings) -> Any:
    tree = load_graph(args.graph)
    weights = load_weights(tree, args.weights)
    periods = period_map(tree, weights, _labyrinth(args.labyrinth))
    return {"periods": vector(periods.values), "total": rational(periods.total)}


def _image(args: argparse.Namespace, settings: Settings) -> Any:
    tree = load_graph(args.graph)
    return polytope_to_dict(image_polytope(tree, _labyrinth(args.labyrinth)))


def _orbit(args: argparse.Namespace, settings: Settings) -> Any:
    target = lift_target(args.genus, args.ovals, parse_vector(args.target))
    region = canonical_region(args.genus, args.ovals)
    orbit = orbit_in_region(target, region, args.genus, args.ovals, settings)
    return [{"word": list(p.word), "image": vector(p.image.values)} for p in orbit.points]


def _fiber(args: argparse.Namespace, settings: Settings) -> Any:
    target = lift_target(args.genus, args.ovals, parse_vector(args.target))
    _, complex_, report = fiber_report(args.genus, args.ovals, target, settings)
    if args.emit_plot_data or args.format == "csv":
        return plot_rows(complex_)
    doc = complex_to_dict(complex_)
    doc["topology"] = report.to_dict()
    return doc


# --------------- Parser ---------------


def _common() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=None, help="seed for sampled faces and orders")
    common.add_argument("-v", "--verbose", action="count", default=0)
    common.add_argument("--format", choices=["json", "csv", "count"], default="json")
    common.add_argument("--truncation", type=Fraction, default=None, help="radius T as p/q")
    common.add_argument("--vertex-budget-factor", type=int, default=None)
    common.add_argument("--word-cap", type=int, default=None)
    common.add_argument("--threads", type=int, default=None)
    return common


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = argparse.ArgumentParser(prog="hyperperiods", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("enumerate", parents=[common], help="list cells for (g, k)")
    p.add_argument("--genus", type=int, required=True)
    p.add_argument("--ovals", type=int, required=True)
    p.add_argument("--count-only", action="store_true")
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--all-dims", action="store_true", help="add lower-dimensional strata")
    mode.add_argument("--by-filter", action="store_true", help="use the cross-check generator")
    p.set_defaults(handler=_enumerate)

    p = sub.add_parser("validate", parents=[common], help="check a graph document")
    p.add_argument("--graph", required=True)
    p.add_argument("--weights")
    p.add_argument("--mode", choices=[m.value for m in WeightMode], default="strict")
    p.set_defaults(handler=_validate)

    p = sub.add_parser("faces", parents=[common], help="codimension-one faces of a cell")
    p.add_argument("--graph", required=True)
    p.set_defaults(handler=_faces)

    p = sub.add_parser("reduce", parents=[common], help="reduce weak weights to a strict graph")
    p.add_argument("--graph", required=True)
    p.add_argument("--weights", required=True)
    p.add_argument("--random-order", action="store_true")
    p.set_defaults(handler=_reduce)

    for name, handler, needs_weights in (
        ("periods", _periods, True),
        ("image", _image, False),
    ):
        p = sub.add_parser(name, parents=[common])
        p.add_argument("--graph", required=True)
        if needs_weights:
            p.add_argument("--weights", required=True)
        p.add_argument("--labyrinth", help="labyrinth choice as v=i,w=j")
        p.set_defaults(handler=handler)

    for name, handler in (("orbit", _orbit), ("fiber", _fiber)):
        p = sub.add_parser(name, parents=[common])
        p.add_argument("--genus", type=int, required=True)
        p.add_argument("--ovals", type=int, required=True)
        p.add_argument("--target", required=True, help="comma separated p/q values")
        if name == "fiber":
            p.add_argument("--emit-plot-data", action="store_true", help="CSV of patch polygons")
        p.set_defaults(handler=handler)
    return parser


def _emit(result: Any, out: TextIO) -> None:
    if isinstance(result, int):
        out.write(f"{result}\n")
    elif isinstance(result, list) and result and isinstance(result[0], list):
        csv.writer(out, lineterminator="\n").writerows(result)
    else:
        out.write(dumps(result) + "\n")


def _fail(e: HyperperiodsError, err: TextIO) -> None:
    err.write(f"error: {e}\n")
    if isinstance(e, MalformedGraphError) and e.report is not None:
        err.write(dumps(e.report.to_dict()) + "\n")
    elif isinstance(e, AssemblyIncompleteError):
        err.write(dumps(e.unmatched) + "\n")


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.verbose:
        logging.basicConfig(level=logging.DEBUG if args.verbose > 1 else logging.INFO)
    try:
        settings = Settings.from_env().with_overrides(
            seed=args.seed,
            truncation=args.truncation,
            vertex_budget_factor=args.vertex_budget_factor,
            word_length_cap=args.word_cap,
            threads=args.threads,
        )
    except ValueError as e:
        parser.error(str(e))
    try:
        result = args.handler(args, settings)
    except HyperperiodsError as e:
        _fail(e, sys.stderr)
        return 1
    _emit(result, sys.stdout)
    return 0


if __name__ == "__main__":
    sys.exit(main())
