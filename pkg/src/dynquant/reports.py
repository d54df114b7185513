"""Verdict objects shared by the identity checkers."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import List, Optional

from .linalg import RationalMatrix


@dataclass
class Check:
    name: str
    ok: bool
    detail: str = ""
    entry: Optional[str] = None
    lhs: Optional[str] = None
    rhs: Optional[str] = None

    def to_json(self) -> dict:
        out = {"check": self.name, "ok": self.ok, "detail": self.detail}
        if self.entry is not None:
            out.update(entry=self.entry, lhs=self.lhs, rhs=self.rhs)
        return out


@dataclass
class CheckReport:
    title: str
    checks: List[Check] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)

    @property
    def failures(self) -> List[Check]:
        return [c for c in self.checks if not c.ok]

    def add(self, name: str, ok: bool, detail: str = "") -> None:
        self.checks.append(Check(name, ok, detail))

    def compare(self, name: str, lhs: RationalMatrix, rhs: RationalMatrix) -> bool:
        """Entry-wise exact comparison; a failure names the first differing entry."""
        if lhs.shape != rhs.shape:
            self.add(name, False, f"shape {lhs.shape} vs {rhs.shape}")
            return False
        pos = lhs.first_difference(rhs)
        if pos is None:
            self.add(name, True)
            return True
        i, j = pos
        entry = f"({lhs.rows[i]}, {lhs.cols[j]})"
        a, b = lhs[pos].format(), rhs[pos].format()
        self.checks.append(Check(name, False, f"entry {entry}: {a} != {b}", entry, a, b))
        return False

    def merge(self, other: "CheckReport", prefix: Optional[str] = None) -> None:
        for c in other.checks:
            self.checks.append(Check(f"{prefix}: {c.name}" if prefix else c.name, c.ok, c.detail,
                                     c.entry, c.lhs, c.rhs))

    def to_json(self) -> dict:
        out = {"title": self.title, "ok": self.ok, "checks": [c.to_json() for c in self.checks]}
        if self.failures:
            out["first_failure"] = self.failures[0].to_json()
        return out

    def summary(self) -> str:
        lines = [f"{self.title}: {'PASS' if self.ok else 'FAIL'} ({len(self.checks)} checks)"]
        lines += [f"  FAIL {c.name}: {c.detail}" for c in self.failures]
        return "\n".join(lines)
