"""Fiber computation as a langgraph workflow: orbit, carve, glue, topology.

The state holds JSON documents only, so any checkpointer can persist a run and
resume it between steps.
"""

from __future__ import annotations

import logging
from collections.abc import Sequence
from fractions import Fraction
from typing import Any, TypedDict

from langchain_core.runnables import RunnableConfig, RunnableLambda
from langgraph.graph import END, StateGraph

from .config import Settings
from .fiber import (
    Carving,
    TopologyReport,
    braid_fixed,
    carve_orbit,
    fiber_orbit,
    glue,
    topology,
)
from .periods import PeriodVector
from .serialization import (
    complex_from_dict,
    complex_to_dict,
    orbit_from_dict,
    orbit_to_dict,
    patch_from_dict,
    patch_to_dict,
    report_from_dict,
    vector,
)

logger = logging.getLogger(__name__)


class FiberState(TypedDict, total=False):
    genus: int
    ovals: int
    target: list[str]
    orbit: dict[str, Any]
    patches: list[dict[str, Any]]
    sieved: list[list[int]]
    complex: dict[str, Any]
    report: dict[str, Any]


def _settings(config: RunnableConfig | None) -> Settings:
    configurable = (config or {}).get("configurable", {})
    truncation = configurable.get("truncation")
    return Settings.from_env().with_overrides(
        truncation=Fraction(truncation) if truncation is not None else None,
        word_length_cap=configurable.get("word_length_cap"),
        threads=configurable.get("threads"),
    )


def _target(state: FiberState) -> PeriodVector:
    return PeriodVector.of(state["target"])


# --------------- Nodes ---------------


def _orbit_node(state: FiberState, config: RunnableConfig) -> FiberState:
    orbit = fiber_orbit(state["genus"], state["ovals"], _target(state), _settings(config))
    return {"orbit": orbit_to_dict(orbit)}


def _carve_node(state: FiberState, config: RunnableConfig) -> FiberState:
    carving = carve_orbit(
        state["genus"],
        state["ovals"],
        _target(state),
        orbit_from_dict(state["orbit"]),
        _settings(config),
    )
    return {
        "patches": [patch_to_dict(p) for p in carving.patches],
        "sieved": [list(w) for w in carving.sieved],
    }


def _glue_node(state: FiberState, config: RunnableConfig) -> FiberState:
    patches = [patch_from_dict(p) for p in state["patches"]]
    complex_ = glue(patches, braid_fixed(state["genus"], state["ovals"], _target(state)))
    return {"complex": complex_to_dict(complex_)}


def _topology_node(state: FiberState, config: RunnableConfig) -> FiberState:
    complex_ = complex_from_dict(state["complex"])
    carving = Carving(
        state["genus"],
        state["ovals"],
        _target(state),
        orbit_from_dict(state["orbit"]),
        complex_.patches,
        tuple(tuple(w) for w in state.get("sieved", [])),
    )
    report = topology(complex_, carving)
    logger.debug("fiber over %s: cell=%s", state["target"], report.is_cell)
    return {"report": report.to_dict()}


def build_fiber_graph() -> StateGraph:
    g = StateGraph(FiberState)
    g.add_node("orbit", RunnableLambda(_orbit_node))
    g.add_node("carve", RunnableLambda(_carve_node))
    g.add_node("glue", RunnableLambda(_glue_node))
    g.add_node("topology", RunnableLambda(_topology_node))
    g.set_entry_point("orbit")
    g.add_edge("orbit", "carve")
    g.add_edge("carve", "glue")
    g.add_edge("glue", "topology")
    g.add_edge("topology", END)
    return g


def run_fiber_pipeline(
    genus: int,
    ovals: int,
    target: Sequence[Fraction | int | str],
    config: RunnableConfig | None = None,
    checkpointer: Any = None,
) -> TopologyReport:
    """Run the whole workflow and return its ``TopologyReport``.

    A checkpointer needs ``config["configurable"]["thread_id"]``.
    """
    app = build_fiber_graph().compile(checkpointer=checkpointer)
    state: FiberState = {
        "genus": genus,
        "ovals": ovals,
        "target": vector([Fraction(x) for x in target]),
    }
    final = app.invoke(state, config)
    return report_from_dict(final["report"])
