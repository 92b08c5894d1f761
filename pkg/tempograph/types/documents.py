from dataclasses import dataclass, field
from typing import Any, Dict, Mapping, Tuple

from .exceptions import ValidationException, ASSERT_NON_EMPTY
from .interval import TemporalInterval
from .property_map import PropertyMap
from .timestamp import Timestamp, UNKNOWN


@dataclass(frozen=True)
class Document:
    """One record of a document corpus."""

    id: str
    text: str
    title: str = ""
    published_at: Timestamp = field(default=UNKNOWN)
    source_weight: float = 1.0

    def __post_init__(self):
        ASSERT_NON_EMPTY(self.id, "document id")
        if not (0.0 < self.source_weight <= 1.0):
            raise ValidationException(
                "document source_weight must lie in (0, 1]", self.source_weight
            )

    def to_dict(self) -> Dict[str, Any]:
        return {
            "id": self.id,
            "title": self.title,
            "text": self.text,
            "published_at": self.published_at.to_iso(),
            "source_weight": self.source_weight,
        }

    @classmethod
    def from_dict(cls, data: Mapping[str, Any]) -> "Document":
        return cls(
            id=str(data["id"]),
            title=data.get("title", ""),
            text=data["text"],
            published_at=Timestamp.from_iso(data.get("published_at")),
            source_weight=float(data.get("source_weight", 1.0)),
        )


@dataclass(frozen=True)
class CandidateEntity:
    """An entity as extracted from a document, before alignment."""

    key: str
    """Extraction-local key, unique within one partial graph"""
    type: str
    name: str
    description: str = ""
    properties: PropertyMap = field(default_factory=PropertyMap)

    def __post_init__(self):
        ASSERT_NON_EMPTY(self.name, "candidate entity name")


@dataclass(frozen=True)
class CandidateEdge:
    """
    An extracted triple. For exclusive relations the object is a plain value
    (``object_value``) that ends up in the subject's property slot; otherwise
    ``target_key`` names a candidate entity of the same partial graph.
    """

    source_key: str
    relation: str
    target_key: str
    subject_type: str
    object_type: str
    object_value: str
    interval: TemporalInterval = field(default_factory=TemporalInterval.always)
    exclusive: bool = False
    context: str = ""
    properties: PropertyMap = field(default_factory=PropertyMap)


@dataclass(frozen=True)
class PartialGraph:
    """Extraction result of one document."""

    document: Document
    entities: Tuple[CandidateEntity, ...] = ()
    edges: Tuple[CandidateEdge, ...] = ()

    def __post_init__(self):
        keys = [e.key for e in self.entities]
        if len(set(keys)) != len(keys):
            raise ValidationException("duplicate candidate entity keys", keys)
        known = set(keys)
        for edge in self.edges:
            if edge.source_key not in known:
                raise ValidationException(
                    "candidate edge refers to an unknown subject", edge.source_key
                )
            if not edge.exclusive and edge.target_key not in known:
                raise ValidationException(
                    "candidate edge refers to an unknown object", edge.target_key
                )

    @property
    def empty(self) -> bool:
        return not self.entities and not self.edges

    def entity(self, key: str) -> CandidateEntity:
        for candidate in self.entities:
            if candidate.key == key:
                return candidate
        raise ValidationException("no candidate entity with key", key)
