"""Uniform record for every machine-checked lemma."""
from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field

from ..core import Coloring


@dataclass
class LemmaReport:
    lemma_id: str
    universe_description: str
    universe_size: int
    instances_checked: int = 0
    hypothesis_count: int = 0
    violations: list = field(default_factory=list)
    runtime: float = 0.0
    notes: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return not self.violations and self.instances_checked == self.universe_size

    def to_json(self) -> dict:
        out = asdict(self)
        out["violations"] = [_plain(v) for v in self.violations]
        out["notes"] = _plain(self.notes)
        out["passed"] = self.passed
        return out

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)

    def summary(self) -> str:
        verdict = "PASS" if self.passed else "FAIL"
        return (f"{verdict} {self.lemma_id}: {self.instances_checked}/{self.universe_size} checked, "
                f"{self.hypothesis_count} under hypothesis, {len(self.violations)} violations, "
                f"{self.runtime:.2f}s")


def _plain(obj):
    if isinstance(obj, Coloring):
        return str(obj)
    if isinstance(obj, dict):
        return {str(k): _plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_plain(v) for v in obj]
    return obj
