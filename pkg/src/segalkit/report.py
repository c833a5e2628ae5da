"""Uniform reports for checks, tagged with an anchor from a fixed registry."""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any

ANCHORS = frozenset({
    "D:kanms(a)", "D:kanms(b)", "T:Kan", "D:rfib", "E:rfib(a)", "D:left",
    "E:left(a)", "L:leftcart(b)", "L:leftcart(c)", "L:leftcart", "E:Segal(b)",
    "E:comp", "E:css(c)", "L:css(a)", "L:css(b)", "E:objmap(d)", "P:triv",
    "T:yoneda(b)", "L:undcat", "L:disc", "E:itercyl", "E:fn(a)", "E:skel2(b)",
    "E:opp", "E:catmor", "L:morp", "E:stsym(b)", "E:section", "E:sdr(a)",
    "L:we", "E:rem", "plumbing",
})


class UnknownAnchor(ValueError):
    pass


def jsonable(value: Any) -> Any:
    """Reduce a detail payload to plain JSON values with a stable order."""
    if isinstance(value, dict):
        return {str(k): jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple, set, frozenset)):
        items = [jsonable(v) for v in value]
        return sorted(items, key=repr) if isinstance(value, (set, frozenset)) else items
    if isinstance(value, (str, int, float, bool)) or value is None:
        return value
    return repr(value)


@dataclass
class Report:
    check: str
    anchor: str
    tier: str
    verdict: bool
    certificate: Any = None
    detail: dict = field(default_factory=dict)
    seconds: float | None = None

    def __post_init__(self):
        for a in self.anchor.split("+"):
            if a not in ANCHORS:
                raise UnknownAnchor(a)
        if not self.tier:
            raise ValueError("every verdict carries a tier")

    def to_dict(self, timings: bool = False) -> dict:
        d = {
            "check": self.check,
            "anchor": self.anchor,
            "tier": self.tier,
            "verdict": self.verdict,
            "certificate": jsonable(self.certificate),
            "detail": jsonable(self.detail),
        }
        if timings and self.seconds is not None:
            d["seconds"] = round(self.seconds, 3)
        return d

    def to_json(self, timings: bool = False) -> str:
        return json.dumps(self.to_dict(timings), sort_keys=True, indent=1, ensure_ascii=False) + "\n"

    def to_text(self) -> str:
        lines = [f"{self.check}: {'PASS' if self.verdict else 'FAIL'}  [{self.anchor}, {self.tier}]"]
        if self.certificate is not None:
            lines.append(f"  certificate: {jsonable(self.certificate)}")
        for k, v in self.detail.items():
            lines.append(f"  {k}: {jsonable(v)}")
        return "\n".join(lines) + "\n"
