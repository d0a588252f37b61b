"""Check/report containers shared by the verification routines and the CLI."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any


@dataclass
class Check:
    name: str
    identity: str
    passed: bool
    params: dict = field(default_factory=dict)
    residual: str | None = None
    informational: bool = False

    def to_dict(self) -> dict:
        out = {
            "name": self.name,
            "identity": self.identity,
            "passed": self.passed,
            "params": self.params,
        }
        if self.residual is not None:
            out["residual"] = self.residual
        if self.informational:
            out["informational"] = True
        return out


@dataclass
class Report:
    title: str
    checks: list[Check] = field(default_factory=list)
    info: dict[str, Any] = field(default_factory=dict)

    def add(self, name, identity, passed, residual=None, informational=False, **params):
        self.checks.append(
            Check(
                name=name,
                identity=identity,
                passed=bool(passed),
                params={k: _plain(v) for k, v in params.items()},
                residual=None if passed else (None if residual is None else str(residual)),
                informational=informational,
            )
        )

    def extend(self, other: Report) -> None:
        self.checks.extend(other.checks)
        for k, v in other.info.items():
            self.info[k] = v

    @property
    def failures(self) -> list[Check]:
        return [c for c in self.checks if not c.passed and not c.informational]

    @property
    def passed(self) -> bool:
        return not self.failures

    def to_dict(self) -> dict:
        return {
            "title": self.title,
            "passed": self.passed,
            "n_checks": len(self.checks),
            "n_failed": len(self.failures),
            "info": self.info,
            "checks": [c.to_dict() for c in self.checks],
        }


def _plain(v):
    from fractions import Fraction

    from .exact import format_q

    if isinstance(v, Fraction):
        return format_q(v)
    if isinstance(v, (list, tuple)):
        return [_plain(x) for x in v]
    return v
