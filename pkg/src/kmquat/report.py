"""Uniform pass/fail records shared by every verification routine."""
from __future__ import annotations

from dataclasses import dataclass, field


@dataclass
class Report:
    check: str
    generator: str
    status: str  # "pass", "fail" or "n/a"
    counterexample: dict | None = None
    extra: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return self.status != "fail"

    def to_json(self) -> dict:
        out = {"check": self.check, "generator": self.generator, "status": self.status}
        if self.counterexample is not None:
            out["counterexample"] = self.counterexample
        out.update(self.extra)
        return out
