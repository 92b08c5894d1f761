from dataclasses import dataclass, field
from typing import Any, Dict, Optional

from .exceptions import IntervalException
from .timestamp import Timestamp, UNKNOWN


@dataclass(frozen=True)
class TemporalInterval:
    """
    Validity window of a fact. Either endpoint may be unknown; when both are
    known, ``start <= end`` holds.
    """

    start: Timestamp = field(default=UNKNOWN)
    end: Timestamp = field(default=UNKNOWN)

    def __post_init__(self):
        if self.start.known and self.end.known and self.start > self.end:
            raise IntervalException("interval start lies after its end", self)

    @classmethod
    def always(cls) -> "TemporalInterval":
        """The fully unknown interval (⊥, ⊥)."""
        return cls(UNKNOWN, UNKNOWN)

    @classmethod
    def from_iso(cls, start: Optional[str], end: Optional[str]) -> "TemporalInterval":
        return cls(Timestamp.from_iso(start), Timestamp.from_iso(end))

    @property
    def unknown(self) -> bool:
        return not self.start.known and not self.end.known

    def to_dict(self) -> Dict[str, Any]:
        return {"start": self.start.to_iso(), "end": self.end.to_iso()}

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "TemporalInterval":
        return cls.from_iso(data.get("start"), data.get("end"))

    def key(self):
        """Totally ordered key, unknown endpoints sort first."""
        return (
            (0, 0) if not self.start.known else (1, self.start.value),
            (0, 0) if not self.end.known else (1, self.end.value),
        )

    def __repr__(self):
        return "[{}, {}]".format(self.start.render(), self.end.render())
