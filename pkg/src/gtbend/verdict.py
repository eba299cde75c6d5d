"""Pass/fail/inconclusive results shared by the predicate modules."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

PASS = "pass"
FAIL = "fail"
INCONCLUSIVE = "inconclusive"


class HypothesisError(ValueError):
    """A structural precondition of a convexity statement does not hold.

    Kept distinct from a ``fail`` verdict, which means the conclusion was
    tested and violated.
    """


class PreconditionError(ValueError):
    """An argument lies outside the documented domain of an operation."""


@dataclass
class Verdict:
    name: str
    status: str
    residual: float | None = None
    witness: Any = None
    details: dict[str, Any] = field(default_factory=dict)

    def __bool__(self) -> bool:
        return self.status == PASS

    @property
    def passed(self) -> bool:
        return self.status == PASS

    def to_dict(self) -> dict[str, Any]:
        return {
            "name": self.name,
            "verdict": self.status,
            "residual": self.residual,
            "witness": self.witness,
            "details": self.details,
        }


def combine(statuses: list[str]) -> str:
    if any(s == FAIL for s in statuses):
        return FAIL
    if any(s == INCONCLUSIVE for s in statuses):
        return INCONCLUSIVE
    return PASS
