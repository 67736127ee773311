"""Check reports: a count of verified facts plus the list of violations."""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass
class Report:
    title: str
    checks: int = 0
    violations: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def record(self, passed: bool, message: str) -> None:
        self.checks += 1
        if not passed:
            self.violations.append(message)

    def merge(self, other: "Report") -> None:
        self.checks += other.checks
        self.violations.extend(other.violations)

    def __str__(self) -> str:
        if self.ok:
            return f"{self.title}: OK ({self.checks} checks)"
        lines = [f"{self.title}: FAILED ({len(self.violations)} of {self.checks} checks)"]
        lines.extend("  " + v for v in self.violations)
        return "\n".join(lines)
