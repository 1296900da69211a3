"""Structured results for the verification-style operations."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

__all__ = ["VerificationReport"]


@dataclass
class VerificationReport:
    """Outcome of a bounded check.

    ``status`` is ``"pass"`` or ``"fail"``.  ``complete`` is False when a
    search bound was exhausted, so a ``pass`` is only conclusive up to
    the stated bound.  ``details`` carries check-specific extras and is
    merged into the JSON form.
    """

    check: str
    status: str
    bound: int | None = None
    witness: Any = None
    complete: bool = True
    details: dict[str, Any] = field(default_factory=dict)

    @property
    def passed(self):
        return self.status == "pass"

    def to_json(self):
        data = {"check": self.check, "status": self.status, "complete": self.complete}
        if self.bound is not None:
            data["bound"] = self.bound
        if self.witness is not None:
            data["witness"] = self.witness
        for k, v in self.details.items():
            data.setdefault(k, v)
        return data

    def summary(self):
        parts = [f"{self.check}: {self.status}"]
        if self.bound is not None:
            parts.append(f"(bound {self.bound})")
        if not self.complete:
            parts.append("[search bound reached; possibly incomplete]")
        if self.witness is not None:
            parts.append(f"witness={self.witness}")
        return " ".join(parts)
