"""Finding records shared by every scanner."""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Any


class LemmaViolation(AssertionError):
    """A checked statement failed on a concrete tuple."""


def _plain(value: Any) -> Any:
    if isinstance(value, (list, tuple)):
        return [_plain(v) for v in value]
    if isinstance(value, dict):
        return {str(k): _plain(v) for k, v in value.items()}
    if isinstance(value, (str, int, float, bool)) or value is None:
        return value
    return str(value)


@dataclass
class Record:
    lemma: str
    tuple: Any
    expected: Any
    observed: Any
    ok: bool

    def to_dict(self) -> dict:
        return {
            "lemma": self.lemma,
            "tuple": _plain(self.tuple),
            "expected": _plain(self.expected),
            "observed": _plain(self.observed),
            "ok": self.ok,
        }


@dataclass
class Report:
    """Per-lemma counters plus records; passing records are kept only with ``keep_all``."""

    keep_all: bool = False
    records: list[Record] = field(default_factory=list)
    checked: Counter = field(default_factory=Counter)
    failed: Counter = field(default_factory=Counter)
    skipped: Counter = field(default_factory=Counter)

    def check(self, lemma: str, tup: Any, expected: Any, observed: Any) -> bool:
        ok = expected == observed
        self.checked[lemma] += 1
        if not ok:
            self.failed[lemma] += 1
        if self.keep_all or not ok:
            self.records.append(Record(lemma, tup, expected, observed, ok))
        return ok

    def skip(self, reason: str, n: int = 1) -> None:
        self.skipped[reason] += n

    def merge(self, other: "Report") -> "Report":
        self.records.extend(other.records)
        self.checked.update(other.checked)
        self.failed.update(other.failed)
        self.skipped.update(other.skipped)
        return self

    @property
    def violations(self) -> list[Record]:
        return [r for r in self.records if not r.ok]

    @property
    def ok(self) -> bool:
        return not self.failed

    def to_dict(self) -> dict:
        return {
            "ok": self.ok,
            "checked": dict(sorted(self.checked.items())),
            "failed": dict(sorted(self.failed.items())),
            "skipped": dict(sorted(self.skipped.items())),
            "records": [r.to_dict() for r in self.records],
        }
