"""Verification report records and their JSON serialization."""

from __future__ import annotations

import json
from dataclasses import dataclass, field


@dataclass
class CheckResult:
    """One verified identity: what was checked, at which point, both sides."""

    check: str
    params: dict
    n: int | None
    status: str  # "pass" | "fail"
    lhs: str | None = None
    rhs: str | None = None
    residual: str | None = None

    @property
    def ok(self) -> bool:
        return self.status == "pass"

    def to_json_obj(self) -> dict:
        return {
            "check": self.check,
            "params": dict(self.params),
            "n": self.n,
            "status": self.status,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "residual": self.residual,
        }


@dataclass
class VerificationReport:
    """Ordered collection of check results with an aggregate verdict."""

    results: list = field(default_factory=list)

    def add(self, result: CheckResult) -> CheckResult:
        self.results.append(result)
        return result

    def merge(self, other: "VerificationReport") -> "VerificationReport":
        self.results.extend(other.results)
        return self

    @property
    def ok(self) -> bool:
        return all(r.ok for r in self.results)

    @property
    def failures(self) -> list:
        return [r for r in self.results if not r.ok]

    def to_json_obj(self) -> dict:
        return {
            "status": "pass" if self.ok else "fail",
            "checks": [r.to_json_obj() for r in self.results],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj(), sort_keys=True, indent=2) + "\n"
