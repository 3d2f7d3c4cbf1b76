"""Three-valued verdicts with a trail of which hypothesis decided them."""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict


class Status(str, Enum):
    AFFIRMED = "affirmed"
    REFUTED = "refuted"
    INDETERMINATE = "indeterminate"


@dataclass(frozen=True)
class Verdict:
    status: Status
    label: str
    reason: str = ""
    condition: str = ""
    witness: Any = None
    data: Dict[str, Any] = field(default_factory=dict)

    @classmethod
    def yes(cls, label, reason="", condition="", witness=None, **data):
        return cls(Status.AFFIRMED, label, reason, condition, witness, data)

    @classmethod
    def no(cls, label, reason="", condition="", witness=None, **data):
        return cls(Status.REFUTED, label, reason, condition, witness, data)

    @classmethod
    def unknown(cls, label, reason="", condition="", witness=None, **data):
        return cls(Status.INDETERMINATE, label, reason, condition, witness, data)

    @property
    def affirmed(self) -> bool:
        return self.status is Status.AFFIRMED

    @property
    def refuted(self) -> bool:
        return self.status is Status.REFUTED

    @property
    def indeterminate(self) -> bool:
        return self.status is Status.INDETERMINATE

    def to_json(self) -> Dict[str, Any]:
        out = {
            "status": self.status.value,
            "label": self.label,
            "reason": self.reason,
            "paper_condition": self.condition,
        }
        if self.witness is not None:
            out["witness"] = str(self.witness)
        for k, v in self.data.items():
            if isinstance(v, (bool, int, str)) or v is None:
                out[k] = v
            elif isinstance(v, (list, tuple)):
                out[k] = [x if isinstance(x, (bool, int, str)) or x is None else str(x) for x in v]
            else:
                out[k] = str(v)
        return out

    def __str__(self):
        s = f"{self.label} [{self.status.value}]"
        if self.reason:
            s += f": {self.reason}"
        return s
