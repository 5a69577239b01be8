"""Per-axiom verdicts with the first counterexample."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .poly import Poly
from .tensor import Tensor

__all__ = ["Item", "Report"]


@dataclass
class Item:
    axiom: str
    passed: bool = True
    where: tuple[str, ...] | None = None
    residual: str | None = None
    checked: int = 0
    note: str | None = None

    def to_dict(self) -> dict:
        d = {"axiom": self.axiom, "verdict": "pass" if self.passed else "fail", "checked": self.checked}
        if not self.passed:
            d["counterexample"] = {"generators": list(self.where or ()), "residual": self.residual}
        if self.note:
            d["note"] = self.note
        return d


@dataclass
class Report:
    title: str
    items: list[Item] = field(default_factory=list)
    names: Sequence[str] | None = None

    def _item(self, axiom: str) -> Item:
        for it in self.items:
            if it.axiom == axiom:
                return it
        it = Item(axiom)
        self.items.append(it)
        return it

    def record(self, axiom: str, where: Sequence, residual) -> bool:
        """Register one residual; only the first nonzero one per axiom is kept."""
        it = self._item(axiom)
        it.checked += 1
        zero = residual.is_zero() if isinstance(residual, (Poly, Tensor)) else not residual
        if not zero and it.passed:
            it.passed = False
            it.where = tuple(self._name(w) for w in where)
            it.residual = self._format(residual)
        return zero

    def declare(self, axiom: str):
        self._item(axiom)

    def fail(self, axiom: str, note: str):
        it = self._item(axiom)
        it.passed = False
        it.note = note

    def merge(self, other: "Report", prefix: str = "") -> "Report":
        for it in other.items:
            it = Item(prefix + it.axiom, it.passed, it.where, it.residual, it.checked, it.note)
            self.items.append(it)
        return self

    def _name(self, w):
        if isinstance(w, int) and self.names is not None:
            return self.names[w]
        return str(w)

    def _format(self, residual) -> str:
        if isinstance(residual, Tensor):
            return residual.format(self.names)
        return str(residual)

    @property
    def passed(self) -> bool:
        return all(it.passed for it in self.items)

    overall = passed

    def __bool__(self) -> bool:
        return self.passed

    def item(self, axiom: str) -> Item:
        for it in self.items:
            if it.axiom == axiom:
                return it
        raise KeyError(axiom)

    def to_dict(self) -> dict:
        return {
            "title": self.title,
            "overall": "pass" if self.passed else "fail",
            "items": [it.to_dict() for it in self.items],
        }

    def format_text(self) -> str:
        lines = [f"{self.title}: {'PASS' if self.passed else 'FAIL'}"]
        for it in self.items:
            line = f"  [{'ok' if it.passed else 'FAIL'}] {it.axiom} ({it.checked} checked)"
            if not it.passed:
                if it.where is not None:
                    line += f" at ({', '.join(it.where)}): {it.residual}"
                if it.note:
                    line += f" {it.note}"
            lines.append(line)
        return "\n".join(lines)

    def __str__(self) -> str:
        return self.format_text()
