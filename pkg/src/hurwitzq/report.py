from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Dict


@dataclass
class CheckResult:
    """Outcome of a verifier; truthy iff the check passed.

    ``counterexample`` names the first failing location (coefficient index,
    exponent, state, ...) together with the offending residual.
    """

    name: str
    ok: bool
    counterexample: Dict[str, Any] = field(default_factory=dict)
    info: Dict[str, Any] = field(default_factory=dict)

    def __bool__(self) -> bool:
        return self.ok

    def to_json(self) -> Dict[str, Any]:
        out: Dict[str, Any] = {"check": self.name, "pass": self.ok}
        if self.info:
            out.update(self.info)
        if not self.ok:
            out["counterexample"] = self.counterexample
        return out
