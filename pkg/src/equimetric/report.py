"""Check reports shared by the verification modules.

A report is an ordered list of named checks; ordering is deterministic
(insertion order, which every producer keeps canonical). ``fail`` statuses
drive exit codes; ``advisory`` never does.
"""

from __future__ import annotations

from dataclasses import dataclass, field

PASS = "pass"
FAIL = "fail"
ADVISORY = "advisory"


def fmt9(value: float) -> str:
    """Fixed 9-significant-digit rendering, 'inf' for infinities."""
    if value != value:
        return "nan"
    if value == float("inf"):
        return "inf"
    if value == float("-inf"):
        return "-inf"
    return f"{value:.9g}"


@dataclass
class Check:
    name: str
    status: str
    witnesses: list = field(default_factory=list)
    max_residual: float = 0.0

    def line(self) -> str:
        witness = ";".join(str(w) for w in self.witnesses) if self.witnesses else "-"
        return f"{self.name}\t{self.status}\t{fmt9(self.max_residual)}\t{witness}"


@dataclass
class Report:
    checks: list = field(default_factory=list)

    def add(self, name, status, witnesses=None, max_residual=0.0):
        names = {c.name for c in self.checks}
        if name in names:
            raise ValueError(f"duplicate check name {name!r}")
        self.checks.append(Check(name, status, list(witnesses or []), float(max_residual)))

    def extend(self, other: "Report"):
        for c in other.checks:
            self.add(c.name, c.status, c.witnesses, c.max_residual)

    def __getitem__(self, name: str) -> Check:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    @property
    def all_pass(self) -> bool:
        return all(c.status != FAIL for c in self.checks)

    def counts(self):
        out = {PASS: 0, FAIL: 0, ADVISORY: 0}
        for c in self.checks:
            out[c.status] += 1
        return out

    def lines(self):
        return [c.line() for c in self.checks]
