from __future__ import annotations

from dataclasses import dataclass, field

from .colors import WeightVec, format_weight


@dataclass
class Report:
    suite: str
    cases: int = 0
    failures: list[dict] = field(default_factory=list)
    max_discrepancy: int = 0

    @property
    def ok(self) -> bool:
        return not self.failures

    def record(self, weight: WeightVec | None, detail: str, discrepancy: int = 0) -> None:
        self.cases += 1
        self.max_discrepancy = max(self.max_discrepancy, discrepancy)
        if discrepancy:
            self.failures.append(
                {"weight": None if weight is None else format_weight(weight), "detail": detail}
            )

    def check(self, ok: bool, weight: WeightVec | None, detail: str) -> None:
        """Record a yes/no case; a failure counts as discrepancy 1."""
        self.record(weight, detail, 0 if ok else 1)

    def merge(self, other: Report) -> None:
        self.cases += other.cases
        self.failures.extend(other.failures)
        self.max_discrepancy = max(self.max_discrepancy, other.max_discrepancy)

    def to_json(self) -> dict:
        return {
            "suite": self.suite,
            "cases": self.cases,
            "failures": self.failures,
            "max_discrepancy": self.max_discrepancy,
        }
