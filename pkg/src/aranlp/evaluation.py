"""Shared metric utilities: weighted micro averages and evaluation report
rendering used by the ner and wsd evaluation commands."""

from __future__ import annotations

import json
from collections.abc import Sequence
from dataclasses import dataclass

from .errors import EmptyInput


def micro_average(scores: Sequence[tuple[float, float]]) -> float:
    """Weighted mean of (score, weight) pairs; weights must be positive."""
    if not scores:
        raise EmptyInput("micro_average needs at least one (score, weight) pair")
    for _, weight in scores:
        if not weight > 0:
            raise ValueError(f"weights must be positive, got {weight}")
    total_weight = sum(weight for _, weight in scores)
    return sum(score * weight for score, weight in scores) / total_weight


def format_percent(value: float) -> str:
    return f"{value * 100:.2f}%"


@dataclass(frozen=True)
class CategoryResult:
    """One evaluation row: instance counts plus the category score."""

    name: str
    gold: int
    predicted: int
    correct: int
    score: float
    weight: float = 0.0


@dataclass(frozen=True)
class EvalReport:
    title: str
    score_label: str
    categories: tuple[CategoryResult, ...]
    overall: float | None = None

    def render_text(self) -> str:
        headers = ("category", "gold", "predicted", "correct", self.score_label)
        rows = [
            (c.name, str(c.gold), str(c.predicted), str(c.correct), format_percent(c.score))
            for c in self.categories
        ]
        if self.overall is not None:
            rows.append(("overall (micro average)", "", "", "", format_percent(self.overall)))
        widths = [
            max(len(headers[i]), *(len(r[i]) for r in rows)) if rows else len(headers[i])
            for i in range(len(headers))
        ]
        lines = [self.title]
        lines.append("  ".join(h.ljust(widths[i]) for i, h in enumerate(headers)).rstrip())
        for row in rows:
            lines.append("  ".join(cell.ljust(widths[i]) for i, cell in enumerate(row)).rstrip())
        return "\n".join(lines)

    def render_records(self) -> str:
        records = [
            {
                "category": c.name,
                "gold": c.gold,
                "predicted": c.predicted,
                "correct": c.correct,
                "score": c.score,
                "weight": c.weight,
            }
            for c in self.categories
        ]
        if self.overall is not None:
            records.append({"category": "overall", "score": self.overall})
        return "\n".join(json.dumps(r, ensure_ascii=False) for r in records)
