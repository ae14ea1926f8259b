from __future__ import annotations

import os
from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Any


@dataclass(frozen=True)
class Settings:
    """Engine-wide knobs.

    ``vertex_budget_factor`` bounds enumeration at ``factor * (g + 1)`` vertices,
    ``word_length_cap`` bounds the breadth-first orbit search for ``n > 2`` strands
    and ``truncation`` is the radius ``T`` used to cut unbounded cone directions.
    """

    vertex_budget_factor: int = 12
    word_length_cap: int = 8
    truncation: Fraction = Fraction(1)
    threads: int = 1
    seed: int = 0

    def vertex_budget(self, genus: int) -> int:
        return self.vertex_budget_factor * (genus + 1)

    def with_overrides(self, **overrides: Any) -> Settings:
        """Return a copy with every non-``None`` override applied."""
        return replace(self, **{k: v for k, v in overrides.items() if v is not None})

    @classmethod
    def from_env(cls) -> Settings:
        defaults = cls()
        return cls(
            vertex_budget_factor=_int_env(
                "HYPERPERIODS_VERTEX_BUDGET_FACTOR", defaults.vertex_budget_factor, minimum=1
            ),
            word_length_cap=_int_env("HYPERPERIODS_WORD_CAP", defaults.word_length_cap, minimum=0),
            truncation=_fraction_env("HYPERPERIODS_TRUNCATION", defaults.truncation),
            threads=_int_env("HYPERPERIODS_THREADS", defaults.threads, minimum=1),
            seed=_int_env("HYPERPERIODS_SEED", defaults.seed, minimum=0),
        )


def _int_env(name: str, default: int, minimum: int) -> int:
    raw = os.getenv(name)
    if raw is None or raw == "":
        return default
    try:
        value = int(raw)
    except ValueError as e:
        raise ValueError(f"{name} must be an integer, got {raw!r}") from e
    if value < minimum:
        raise ValueError(f"{name} must be >= {minimum}, got {value}")
    return value


def _fraction_env(name: str, default: Fraction) -> Fraction:
    raw = os.getenv(name)
    if raw is None or raw == "":
        return default
    try:
        value = Fraction(raw)
    except (ValueError, ZeroDivisionError) as e:
        raise ValueError(f"{name} must be a rational 'p/q', got {raw!r}") from e
    if value <= 0:
        raise ValueError(f"{name} must be positive, got {raw!r}")
    return value
