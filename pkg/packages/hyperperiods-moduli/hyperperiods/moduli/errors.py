"""Exception hierarchy shared by every ``hyperperiods.moduli`` module."""

from __future__ import annotations

from collections.abc import Iterable
from typing import TYPE_CHECKING, Any

if TYPE_CHECKING:
    from .graph import ValidationReport


class HyperperiodsError(Exception):
    """Base class for all domain failures raised by the engine."""


class MalformedGraphError(HyperperiodsError, ValueError):
    """A graph document or tree value violates the structural contract."""

    def __init__(self, message: str, report: ValidationReport | None = None) -> None:
        super().__init__(message)
        self.report = report


class PreconditionError(HyperperiodsError, ValueError):
    """An operation was called on an edge or weight that does not qualify."""


class OuterFaceError(HyperperiodsError):
    """A degeneration would merge two or more branchpoints."""

    def __init__(self, message: str, members: Iterable[int] = ()) -> None:
        super().__init__(message)
        self.members = tuple(sorted(members))


class BudgetExceededError(HyperperiodsError):
    """Enumeration produced a tree larger than the configured vertex budget."""

    def __init__(self, budget: int, size: int) -> None:
        super().__init__(f"Vertex budget exceeded: tree with {size} vertices, budget {budget}")
        self.budget = budget
        self.size = size


class ExceptionalGraphError(HyperperiodsError):
    """The graph admits several canonical labyrinths and none was chosen."""

    def __init__(self, count: int) -> None:
        super().__init__(
            f"Exceptional graph: {count} canonical labyrinths, pass labyrinth_choice explicitly"
        )
        self.count = count


class TargetOutsideImageError(HyperperiodsError, ValueError):
    """The requested period vector is not in the closed image of the coordinate space."""


class UnsupportedError(HyperperiodsError):
    """The requested (g, k) or orbit search lies outside what the engine supports."""


class AssemblyIncompleteError(HyperperiodsError):
    """Inner boundary pieces were left without a gluing partner."""

    def __init__(self, unmatched: list[dict[str, Any]]) -> None:
        super().__init__(f"Fiber assembly incomplete: {len(unmatched)} unmatched inner piece(s)")
        self.unmatched = unmatched
