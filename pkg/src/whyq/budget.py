"""Resource limits shared by the prover and the model finder."""
from __future__ import annotations

import time
from dataclasses import dataclass

# A fixed string (no elapsed seconds) keeps reports byte-reproducible.
WALL_TIME_EXHAUSTED = "wall time exhausted"


@dataclass(frozen=True)
class Budget:
    """Limits for one query.

    ``max_clauses`` bounds kept clauses in the prover and ground clause
    instances in the model finder (counted before satisfied instances are
    dropped); ``max_steps`` bounds given-clause iterations and SAT
    assignments respectively.
    """

    max_clauses: int = 20_000
    max_steps: int = 20_000
    wall_time: float = 5.0

    def __post_init__(self) -> None:
        if self.max_clauses <= 0 or self.max_steps <= 0 or self.wall_time <= 0:
            raise ValueError(f"budget limits must be positive: {self}")

    def deadline(self) -> float:
        return time.monotonic() + self.wall_time

    def as_dict(self) -> dict:
        return {"max_clauses": self.max_clauses, "max_steps": self.max_steps,
                "wall_time": self.wall_time}


DEFAULT_BUDGET = Budget()
