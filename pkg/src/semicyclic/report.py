"""Structured results for identity checks."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any


@dataclass
class Check:
    """One verified identity.

    ``expected`` is False for identities that are supposed to fail (the
    second quasitriangularity axiom in semicyclic representations); a check
    passes when ``holds == expected``.  Checks with ``gating`` False are
    informational and never fail a report.
    """

    identity: str
    holds: bool
    expected: bool = True
    witness: Any = None
    detail: str = ""
    gating: bool = True

    @property
    def ok(self) -> bool:
        return self.holds == self.expected or not self.gating

    @property
    def status(self) -> str:
        if not self.gating:
            return "info: yes" if self.holds else "info: no"
        if self.holds:
            return "holds" if self.expected else "HOLDS (expected failure)"
        return "fails (expected)" if not self.expected else "FAILS"

    def to_json(self) -> dict:
        out: dict[str, Any] = {"identity": self.identity, "holds": self.holds}
        if not self.expected:
            out["expected"] = False
        if self.witness is not None:
            out["witness"] = self.witness
        if self.detail:
            out["detail"] = self.detail
        if not self.gating:
            out["gating"] = False
        return out


@dataclass
class Report:
    checks: list[Check] = field(default_factory=list)

    def add(self, identity: str, holds: bool, **kw) -> Check:
        check = Check(identity, bool(holds), **kw)
        self.checks.append(check)
        return check

    def extend(self, other: "Report") -> None:
        self.checks.extend(other.checks)

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)

    def __getitem__(self, identity: str) -> Check:
        for c in self.checks:
            if c.identity == identity:
                return c
        raise KeyError(identity)

    def __iter__(self):
        return iter(self.checks)

    def __len__(self) -> int:
        return len(self.checks)

    def to_json(self) -> list[dict]:
        return [c.to_json() for c in self.checks]
