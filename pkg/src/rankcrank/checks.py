"""Result objects shared by the verifiers."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

__all__ = ["Check", "VerificationError", "compare_series", "all_ok"]


class VerificationError(AssertionError):
    """An identity that should hold exactly failed to hold."""

    def __init__(self, check: "Check"):
        self.check = check
        super().__init__(f"{check.name} failed: {check.detail}")


@dataclass
class Check:
    """Outcome of one exact comparison.  Truthy exactly when it passed."""

    name: str
    ok: bool
    order: int
    params: dict[str, Any] = field(default_factory=dict)
    detail: str = ""
    sub: list["Check"] = field(default_factory=list)

    def __bool__(self):
        return self.ok

    def raise_if_failed(self) -> "Check":
        if not self.ok:
            raise VerificationError(self)
        return self

    def to_dict(self) -> dict:
        d = {
            "name": self.name,
            "ok": self.ok,
            "order": self.order,
            "params": dict(self.params),
            "detail": self.detail,
        }
        if self.sub:
            d["sub"] = [c.to_dict() for c in self.sub]
        return d


def compare_series(name: str, lhs, rhs, params: dict | None = None) -> Check:
    """Exact coefficientwise comparison of two series of equal order."""
    diff = lhs.first_difference(rhs)
    if diff is None:
        return Check(name, True, lhs.order, params or {})
    n, delta = diff
    return Check(
        name,
        False,
        lhs.order,
        params or {},
        detail=f"first mismatch at q^{n}: lhs - rhs = {delta}",
    )


def all_ok(name: str, checks: list[Check], order: int, params: dict | None = None) -> Check:
    bad = [c for c in checks if not c.ok]
    detail = "; ".join(f"{c.name}: {c.detail}" for c in bad)
    return Check(name, not bad, order, params or {}, detail=detail, sub=list(checks))
