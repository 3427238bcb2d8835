"""Check reports shared by the verification and representation modules."""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .algebra import format_rational

PASS = "pass"
FAIL = "fail"
INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True)
class IdentityResult:
    label: str
    residual: object  # normal-form Polynomial, or None for matrix checks
    passed: bool
    detail: str | None = None


@dataclass(frozen=True)
class CheckReport:
    check: str
    status: str
    identities: tuple
    presentation: object = None
    constants: dict = field(default_factory=dict)
    metadata: dict = field(default_factory=dict)

    @classmethod
    def build(cls, check, identities, presentation=None, *, status=None, constants=None, metadata=None):
        identities = tuple(identities)
        if status is None:
            status = PASS if all(r.passed for r in identities) else FAIL
        return cls(check, status, identities, presentation, dict(constants or {}), dict(metadata or {}))

    @property
    def passed(self):
        return self.status == PASS

    def residuals(self):
        return [r.residual for r in self.identities]

    def failures(self):
        return [r for r in self.identities if not r.passed]

    def to_doc(self):
        from .presentations import poly_to_doc, serialize

        idents = []
        for r in self.identities:
            item = {
                "label": r.label,
                "residual": poly_to_doc(r.residual) if r.residual is not None else None,
                "pass": r.passed,
            }
            if r.detail:
                item["detail"] = r.detail
            idents.append(item)
        return {
            "check": self.check,
            "status": self.status,
            "identities": idents,
            "constants": {k: format_rational(v) for k, v in self.constants.items()},
            "metadata": self.metadata,
            "presentation": serialize(self.presentation) if self.presentation is not None else None,
        }

    def to_json(self):
        return json.dumps(self.to_doc(), indent=2, sort_keys=True, ensure_ascii=False) + "\n"

    def to_text(self):
        lines = [f"{self.check}: {self.status.upper()}"]
        for r in self.identities:
            mark = "ok  " if r.passed else "FAIL"
            line = f"  [{mark}] {r.label}"
            if r.residual is not None and r.residual:
                line += f"    residual: {r.residual}"
            if r.detail:
                line += f"    ({r.detail})"
            lines.append(line)
        for k, v in self.constants.items():
            lines.append(f"  {k} = {format_rational(v)}")
        return "\n".join(lines) + "\n"
