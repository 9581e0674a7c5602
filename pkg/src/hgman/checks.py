"""Pass/fail records for identity verification."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator

import numpy as np

from hgman.exact_tensor import Tensor


@dataclass(frozen=True)
class Check:
    """Outcome of one exact identity check.

    ``witness`` holds the first failing component as 1-based frame indices;
    ``skipped`` explains why a conditional check was not run.
    """

    name: str
    passed: bool
    witness: tuple[int, ...] | None = None
    residual: Fraction | None = None
    skipped: str | None = None

    def to_json(self) -> dict:
        out: dict = {"passed": self.passed}
        if self.witness is not None:
            out["witness"] = list(self.witness)
        if self.residual is not None:
            out["residual"] = str(self.residual)
        if self.skipped is not None:
            out["skipped"] = self.skipped
        return out


@dataclass
class CheckReport:
    checks: list[Check] = field(default_factory=list)

    def add(self, check: Check) -> Check:
        self.checks.append(check)
        return check

    def extend(self, other: CheckReport) -> None:
        self.checks.extend(other.checks)

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks)

    def failures(self) -> list[Check]:
        return [c for c in self.checks if not c.passed]

    def __getitem__(self, name: str) -> Check:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def __contains__(self, name: str) -> bool:
        return any(c.name == name for c in self.checks)

    def __iter__(self) -> Iterator[Check]:
        return iter(self.checks)

    def to_json(self) -> dict:
        return {c.name: c.to_json() for c in self.checks}


def _arr(x) -> np.ndarray:
    return x.components if isinstance(x, Tensor) else np.asarray(x, dtype=object)


def compare(name: str, lhs, rhs) -> Check:
    """Exact componentwise ``lhs == rhs``; reports the first mismatch."""
    diff = _arr(lhs) - _arr(rhs)
    bad = np.argwhere(diff != 0)
    if not len(bad):
        return Check(name, True)
    idx = tuple(int(i) for i in bad[0])
    return Check(name, False, tuple(i + 1 for i in idx), Fraction(diff[idx]))


def vanishes(name: str, t) -> Check:
    return compare(name, t, np.zeros_like(_arr(t)))


def skipped(name: str, reason: str) -> Check:
    return Check(name, True, skipped=reason)
