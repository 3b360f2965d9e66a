# report.py - Verdicts collected by the verification routines
# Verdicts come from a fixed enumeration; details carry witness dimensions and
# other JSON-safe data. Timing is kept apart so report diffs stay meaningful.

from __future__ import annotations

import time
from collections.abc import Iterator
from contextlib import contextmanager
from dataclasses import dataclass, field
from enum import Enum
from typing import Any


class Verdict(str, Enum):
    PASS = "pass"
    FAIL = "fail"
    INCONCLUSIVE = "inconclusive"

    @classmethod
    def of(cls, ok: bool | None) -> Verdict:
        if ok is None:
            return cls.INCONCLUSIVE
        return cls.PASS if ok else cls.FAIL


@dataclass
class Check:
    name: str
    verdict: Verdict
    details: dict[str, Any] = field(default_factory=dict)
    seconds: float = 0.0

    def to_dict(self) -> dict[str, Any]:
        return {"name": self.name, "verdict": self.verdict.value, "details": self.details}


@dataclass
class TriangleReport:
    """Named checks with verdicts; passes iff every check passes."""

    name: str
    checks: list[Check] = field(default_factory=list)

    def add(self, name: str, ok: bool | None | Verdict, **details: Any) -> Check:
        verdict = ok if isinstance(ok, Verdict) else Verdict.of(ok)
        check = Check(name, verdict, _jsonable(details))
        self.checks.append(check)
        return check

    def extend(self, other: TriangleReport, prefix: str = "") -> None:
        for c in other.checks:
            self.checks.append(Check(f"{prefix}{c.name}", c.verdict, c.details, c.seconds))

    @contextmanager
    def timed(self) -> Iterator[None]:
        """Attribute wall time to the checks added inside the block."""
        start = time.perf_counter()
        first = len(self.checks)
        yield
        added = self.checks[first:]
        if added:
            share = (time.perf_counter() - start) / len(added)
            for c in added:
                c.seconds = share

    @property
    def passed(self) -> bool:
        return bool(self.checks) and all(c.verdict is Verdict.PASS for c in self.checks)

    @property
    def verdict(self) -> Verdict:
        if self.passed:
            return Verdict.PASS
        if any(c.verdict is Verdict.FAIL for c in self.checks):
            return Verdict.FAIL
        return Verdict.INCONCLUSIVE

    def failures(self) -> list[Check]:
        return [c for c in self.checks if c.verdict is not Verdict.PASS]

    def to_dict(self) -> dict[str, Any]:
        return {
            "name": self.name,
            "verdict": self.verdict.value,
            "checks": [c.to_dict() for c in self.checks],
        }

    def timings(self) -> dict[str, float]:
        return {c.name: round(c.seconds, 6) for c in self.checks}


def _jsonable(value: Any) -> Any:
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if isinstance(value, Enum):
        return value.value
    if hasattr(value, "item"):
        return value.item()
    return value
