"""Result records shared by the identity, congruence and automaton checkers."""
from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field
from typing import Any, Dict, List, Optional


class CheckFailed(AssertionError):
    """Base class for a mathematical check that did not hold."""


class Mismatch(CheckFailed):
    pass


class ResidualNonzero(CheckFailed):
    pass


@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: Dict[str, Any] = field(default_factory=dict)
    error: type = field(default=Mismatch, repr=False, compare=False)

    def require(self) -> "CheckResult":
        if not self.passed:
            raise self.error(f"{self.name}: {self.detail}")
        return self

    def __bool__(self):
        return self.passed


@dataclass
class VerificationReport:
    """Outcome of one registered case over its tested range.

    ``status`` is ``"pass"`` exactly when ``counterexamples`` is empty. Points
    outside a case's hypothesis that were probed anyway go to ``informational``.
    """

    case: str
    range: str
    status: str = "pass"
    counterexamples: List[Dict[str, Any]] = field(default_factory=list)
    seconds: float = 0.0
    points: int = 0
    informational: List[Dict[str, Any]] = field(default_factory=list)

    def add_counterexample(self, **info) -> None:
        self.counterexamples.append(info)
        self.status = "fail"

    @property
    def passed(self) -> bool:
        return not self.counterexamples

    @property
    def first_counterexample(self) -> Optional[Dict[str, Any]]:
        return self.counterexamples[0] if self.counterexamples else None

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "VerificationReport":
        return cls(**data)

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "VerificationReport":
        return cls.from_dict(json.loads(text))
