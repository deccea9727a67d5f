"""Run-time configuration: enumeration budgets and seeds."""
from __future__ import annotations

import os
from dataclasses import dataclass

BUDGET_ENV = "FIELDRED_BUDGET"


class BudgetExceeded(RuntimeError):
    """An exhaustive enumeration would exceed the configured budget."""

    def __init__(self, what, count, budget):
        super().__init__(f"{what}: {count} objects exceeds budget {budget}")
        self.what = what
        self.count = count
        self.budget = budget


@dataclass(frozen=True)
class Budget:
    name: str = "medium"
    enumeration: int = 10**7
    # largest q for which the two-planes sweep runs
    two_planes_max_q: int = 5

    @classmethod
    def named(cls, name: str) -> "Budget":
        presets = {
            "small": cls("small", 10**6, 5),
            "medium": cls("medium", 10**7, 5),
            "large": cls("large", 10**8, 7),
        }
        if name not in presets:
            raise ValueError(f"unknown budget {name!r}; choose from {sorted(presets)}")
        return presets[name]

    @classmethod
    def resolve(cls, name: str | None = None) -> "Budget":
        """Environment variable wins over the explicit name."""
        env = os.environ.get(BUDGET_ENV)
        return cls.named(env or name or "medium")


DEFAULT_BUDGET = Budget()
