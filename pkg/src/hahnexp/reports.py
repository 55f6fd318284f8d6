"""Check reports: ``{check, instances, passes, failures, undecided, ...}``."""

from __future__ import annotations

import json
from dataclasses import dataclass, field


@dataclass
class Report:
    check: str
    instances: int = 0
    passes: int = 0
    failures: list = field(default_factory=list)
    undecided: int = 0
    notes: list = field(default_factory=list)
    config: dict = field(default_factory=dict)
    wall_time_ms: int = 0

    def record(self, outcome, witness=None):
        """Count one instance; ``outcome`` is True, False or None (undecided)."""
        self.instances += 1
        if outcome is None:
            self.undecided += 1
        elif outcome:
            self.passes += 1
        else:
            self.failures.append(witness if witness is not None else {})

    def extend(self, other):
        self.instances += other.instances
        self.passes += other.passes
        self.failures.extend(other.failures)
        self.undecided += other.undecided
        self.notes.extend(n for n in other.notes if n not in self.notes)

    @property
    def ok(self):
        return not self.failures and not self.undecided

    def note(self, text):
        if text not in self.notes:
            self.notes.append(text)

    def to_dict(self):
        return {
            "check": self.check,
            "config": self.config,
            "instances": self.instances,
            "passes": self.passes,
            "failures": self.failures,
            "undecided": self.undecided,
            "notes": self.notes,
            "wall_time_ms": self.wall_time_ms,
        }

    def to_json(self):
        return json.dumps(self.to_dict(), sort_keys=True)
