"""JSON analysis reports with exact rationals stored as ``"p/q"`` strings."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from hgman.checks import CheckReport
from hgman.classification import ClassificationReport
from hgman.exact_tensor import Tensor

__all__ = ["AnalysisReport", "sparse_table", "fraction_str"]


def fraction_str(x) -> str:
    return str(Fraction(x))


def sparse_table(t) -> dict[str, str]:
    """Nonzero components keyed by comma-joined 1-based indices."""
    comps = t.components if isinstance(t, Tensor) else np.asarray(t, dtype=object)
    return {
        ",".join(str(i + 1) for i in idx): fraction_str(comps[idx])
        for idx in np.ndindex(comps.shape)
        if comps[idx] != 0
    }


def _checks_json(report: CheckReport | dict) -> dict:
    return report.to_json() if isinstance(report, CheckReport) else dict(report)


@dataclass
class AnalysisReport:
    """Everything computed for one manifold.

    ``identity_suite`` holds unconditional checks, ``conditional_checks``
    those gated on parallel torsion, ``display_crosschecks`` comparisons
    against published closed forms that are known to disagree with the
    computed tensors (reported, never gating), and ``golden_diffs`` the
    per-table mismatches against the published example tables.
    """

    classification: ClassificationReport
    tables: dict[str, dict[str, str]]
    scalars: dict
    identity_suite: dict[str, dict]
    conditional_checks: dict[str, dict]
    display_crosschecks: dict[str, dict] = field(default_factory=dict)
    golden_diffs: dict | None = None
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        self.identity_suite = _checks_json(self.identity_suite)
        self.conditional_checks = _checks_json(self.conditional_checks)
        self.display_crosschecks = _checks_json(self.display_crosschecks)

    @property
    def failures(self) -> list[str]:
        bad = [k for k, v in self.identity_suite.items() if not v["passed"]]
        bad += [k for k, v in self.conditional_checks.items() if not v["passed"]]
        if self.golden_diffs:
            bad += [f"golden:{k}" for k, v in self.golden_diffs.items() if not v["ok"]]
        return sorted(bad)

    @property
    def ok(self) -> bool:
        return not self.failures

    def to_json(self) -> dict:
        return {
            "classification": self.classification.to_json(),
            "tables": self.tables,
            "scalars": self.scalars,
            "identity_suite": self.identity_suite,
            "conditional_checks": self.conditional_checks,
            "display_crosschecks": self.display_crosschecks,
            "golden_diffs": self.golden_diffs,
            "meta": self.meta,
            "ok": self.ok,
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True, indent=2) + "\n"

    @classmethod
    def from_json(cls, d: dict) -> AnalysisReport:
        return cls(
            classification=ClassificationReport.from_json(d["classification"]),
            tables=d["tables"],
            scalars=d["scalars"],
            identity_suite=d["identity_suite"],
            conditional_checks=d["conditional_checks"],
            display_crosschecks=d.get("display_crosschecks", {}),
            golden_diffs=d.get("golden_diffs"),
            meta=d.get("meta", {}),
        )

    @classmethod
    def loads(cls, text: str) -> AnalysisReport:
        return cls.from_json(json.loads(text))

    def __eq__(self, other) -> bool:
        if not isinstance(other, AnalysisReport):
            return NotImplemented
        return self.to_json() == other.to_json()
