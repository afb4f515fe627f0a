"""Check and run reports shared by the verification routines and the CLI."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any


@dataclass(frozen=True)
class CheckReport:
    """Outcome of one verification: pass/fail plus the first counterexample."""

    name: str
    passed: bool
    details: dict = field(default_factory=dict)
    first_failure: dict | None = None

    def __bool__(self) -> bool:
        return self.passed

    def to_dict(self) -> dict:
        d = {"name": self.name, "status": "pass" if self.passed else "fail", "details": _jsonable(self.details)}
        if self.first_failure is not None:
            d["first_failure"] = _jsonable(self.first_failure)
        return d


@dataclass
class RunReport:
    command: str
    parameters: dict
    checks: list[CheckReport] = field(default_factory=list)
    error: str | None = None
    timing: dict = field(default_factory=dict)

    @property
    def status(self) -> str:
        if self.error is not None:
            return "error"
        return "pass" if all(c.passed for c in self.checks) else "fail"

    @property
    def exit_code(self) -> int:
        return {"pass": 0, "fail": 1, "error": 2}[self.status]

    def to_dict(self, include_timing: bool = False) -> dict:
        d: dict[str, Any] = {
            "command": self.command,
            "parameters": _jsonable(self.parameters),
            "status": self.status,
            "checks": [c.to_dict() for c in self.checks],
        }
        if self.error is not None:
            d["error"] = self.error
        if include_timing:
            d["timing"] = self.timing
        return d

    def to_json(self, include_timing: bool = False) -> str:
        return json.dumps(self.to_dict(include_timing), indent=2, sort_keys=True) + "\n"


def _jsonable(x):
    # Big integers and rationals travel as strings, never as JSON numbers.
    if isinstance(x, bool) or x is None or isinstance(x, str) or isinstance(x, float):
        return x
    if isinstance(x, int):
        return x if abs(x) < 2**53 else str(x)
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    return str(x)
