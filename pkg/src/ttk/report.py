"""Validation reports shared by the checkers."""
from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True, order=True)
class Violation:
    clause: str
    detail: str

    def as_dict(self):
        return {"clause": self.clause, "detail": self.detail}


def clauses(report) -> set[str]:
    return {v.clause for v in report}


class ReportBuilder:
    """Collects violations, optionally stopping after a limit per clause."""

    def __init__(self, per_clause: int | None = None):
        self.items: list[Violation] = []
        self.per_clause = per_clause
        self._counts: dict[str, int] = {}

    def add(self, clause: str, detail: str):
        n = self._counts.get(clause, 0)
        if self.per_clause is not None and n >= self.per_clause:
            return
        self._counts[clause] = n + 1
        self.items.append(Violation(clause, detail))

    def extend(self, report):
        for v in report:
            self.add(v.clause, v.detail)

    def result(self) -> list[Violation]:
        return list(self.items)
