from dataclasses import dataclass, field, replace
from typing import Any, Dict, Iterator, Mapping, Optional, Tuple, Union

from .exceptions import ValidationException, ASSERT_IN_RANGE
from .timestamp import Timestamp, UNKNOWN


@dataclass(frozen=True)
class PropertyCandidate:
    """
    One candidate value of an exclusive relation slot together with the
    evidence that backs it.
    """

    value: str
    confidence: float = 0.0
    context: str = ""
    """The most recent extraction context (document span, region, time window)"""
    frequency_count: int = 1
    last_seen: Timestamp = field(default=UNKNOWN)
    source_weight: float = 1.0
    contexts: Tuple[str, ...] = ()
    """Bounded history of every context this value was observed under"""

    def __post_init__(self):
        ASSERT_IN_RANGE(self.confidence, 0.0, 1.0, "candidate confidence")
        if not (0.0 < self.source_weight <= 1.0):
            raise ValidationException(
                "source_weight must lie in (0, 1]", self.source_weight
            )
        if self.frequency_count < 1:
            raise ValidationException(
                "stored candidates need frequency_count >= 1", self.frequency_count
            )

    def to_dict(self) -> Dict[str, Any]:
        return {
            "value": self.value,
            "confidence": self.confidence,
            "context": self.context,
            "frequency_count": self.frequency_count,
            "last_seen": self.last_seen.to_iso(),
            "source_weight": self.source_weight,
            "contexts": list(self.contexts),
        }

    @classmethod
    def from_dict(cls, data: Mapping[str, Any]) -> "PropertyCandidate":
        return cls(
            value=data["value"],
            confidence=float(data["confidence"]),
            context=data.get("context", ""),
            frequency_count=int(data["frequency_count"]),
            last_seen=Timestamp.from_iso(data.get("last_seen")),
            source_weight=float(data["source_weight"]),
            contexts=tuple(data.get("contexts", ())),
        )

    def render(self) -> str:
        """``value (70%, ctx:"context")`` as used in the relevance prompt."""
        return '{} ({}%, ctx:"{}")'.format(
            self.value, round(self.confidence * 100), self.context
        )


CandidateSet = Tuple[PropertyCandidate, ...]
PropertyValue = Union[str, CandidateSet]


class PropertyMap(Mapping[str, PropertyValue]):
    """
    Immutable map from relation name to either a plain string value or an
    ordered candidate set (for exclusive relations). All "mutators" return a
    new map.
    """

    __slots__ = ("_entries",)

    def __init__(self, entries: Optional[Mapping[str, PropertyValue]] = None):
        checked: Dict[str, PropertyValue] = {}
        for key, value in (entries or {}).items():
            checked[key] = _check_entry(key, value)
        self._entries = checked

    def __getitem__(self, key: str) -> PropertyValue:
        return self._entries[key]

    def __iter__(self) -> Iterator[str]:
        return iter(sorted(self._entries))

    def __len__(self) -> int:
        return len(self._entries)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, PropertyMap):
            return self._entries == other._entries
        if isinstance(other, Mapping):
            return self._entries == dict(other)
        return False

    def __hash__(self):
        return hash(tuple((k, self._entries[k]) for k in self))

    def __repr__(self):
        return "PropertyMap({})".format(
            ", ".join("{}={!r}".format(k, self._entries[k]) for k in self)
        )

    def is_slot(self, key: str) -> bool:
        return isinstance(self._entries.get(key), tuple)

    def slot(self, key: str) -> CandidateSet:
        value = self._entries.get(key, ())
        if not isinstance(value, tuple):
            raise ValidationException(
                "property {} holds a plain value, not a candidate set".format(key),
                value,
            )
        return value

    def with_value(self, key: str, value: PropertyValue) -> "PropertyMap":
        entries = dict(self._entries)
        entries[key] = value
        return PropertyMap(entries)

    def without(self, key: str) -> "PropertyMap":
        entries = dict(self._entries)
        entries.pop(key, None)
        return PropertyMap(entries)

    def plain_items(self) -> Iterator[Tuple[str, str]]:
        for key in self:
            value = self._entries[key]
            if isinstance(value, str):
                yield key, value

    def slot_items(self) -> Iterator[Tuple[str, CandidateSet]]:
        for key in self:
            value = self._entries[key]
            if isinstance(value, tuple):
                yield key, value

    def render(self) -> str:
        """``{key: [val_1 (70%, ctx:"..."), ...], plain: value}``"""
        parts = []
        for key in self:
            value = self._entries[key]
            if isinstance(value, tuple):
                parts.append(
                    "{}: [{}]".format(key, ", ".join(c.render() for c in value))
                )
            else:
                parts.append("{}: {}".format(key, value))
        return "{" + ", ".join(parts) + "}"

    def to_dict(self) -> Dict[str, Any]:
        out: Dict[str, Any] = {}
        for key in self:
            value = self._entries[key]
            if isinstance(value, tuple):
                out[key] = [c.to_dict() for c in value]
            else:
                out[key] = value
        return out

    @classmethod
    def from_dict(cls, data: Mapping[str, Any]) -> "PropertyMap":
        entries: Dict[str, PropertyValue] = {}
        for key, value in data.items():
            if isinstance(value, list):
                entries[key] = tuple(PropertyCandidate.from_dict(c) for c in value)
            else:
                entries[key] = value
        return cls(entries)


def _check_entry(key: str, value: Any) -> PropertyValue:
    if not isinstance(key, str) or not key:
        raise ValidationException("property keys must be non-empty strings", key)
    if isinstance(value, str):
        return value
    if isinstance(value, (list, tuple)):
        value = tuple(value)
        if not value:
            raise ValidationException(
                "exclusive slot {} must hold at least one candidate".format(key)
            )
        seen = set()
        for candidate in value:
            if not isinstance(candidate, PropertyCandidate):
                raise ValidationException(
                    "slot {} contains a non-candidate".format(key), candidate
                )
            if candidate.value in seen:
                raise ValidationException(
                    "slot {} holds duplicate value".format(key), candidate.value
                )
            seen.add(candidate.value)
        return value
    raise ValidationException(
        "property {} must be a string or a candidate set".format(key), value
    )


def bump_candidate(
    candidate: PropertyCandidate,
    context: str,
    observed_at: Timestamp,
    source_weight: float,
    context_cap: int,
) -> PropertyCandidate:
    """Record one more observation of an existing candidate value."""
    contexts = (candidate.contexts + (context,))[-context_cap:]
    last_seen = candidate.last_seen
    if observed_at.known and (not last_seen.known or observed_at > last_seen):
        last_seen = observed_at
    return replace(
        candidate,
        context=context,
        contexts=contexts,
        frequency_count=candidate.frequency_count + 1,
        last_seen=last_seen,
        source_weight=max(candidate.source_weight, source_weight),
    )
