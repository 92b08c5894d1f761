from dataclasses import dataclass, field
from typing import Any, Dict, Mapping

from ..helpers import stable_hash
from .exceptions import ValidationException, ASSERT_NON_EMPTY
from .interval import TemporalInterval
from .property_map import PropertyMap


@dataclass(frozen=True)
class Entity:
    id: str
    type: str
    name: str
    description: str = ""
    properties: PropertyMap = field(default_factory=PropertyMap)
    embedding_version: int = 0

    def __post_init__(self):
        ASSERT_NON_EMPTY(self.id, "entity id")
        ASSERT_NON_EMPTY(self.name, "entity name")
        if not isinstance(self.properties, PropertyMap):
            object.__setattr__(self, "properties", PropertyMap(self.properties))

    def to_dict(self) -> Dict[str, Any]:
        return {
            "id": self.id,
            "type": self.type,
            "name": self.name,
            "description": self.description,
            "properties": self.properties.to_dict(),
            "embedding_version": self.embedding_version,
        }

    @classmethod
    def from_dict(cls, data: Mapping[str, Any]) -> "Entity":
        return cls(
            id=data["id"],
            type=data.get("type", ""),
            name=data["name"],
            description=data.get("description", ""),
            properties=PropertyMap.from_dict(data.get("properties", {})),
            embedding_version=int(data.get("embedding_version", 0)),
        )

    def render(self) -> str:
        return render_entity(self.type, self.name, self.description, self.properties)


@dataclass(frozen=True)
class Edge:
    id: str
    source: str
    relation: str
    target: str
    interval: TemporalInterval = field(default_factory=TemporalInterval.always)
    properties: PropertyMap = field(default_factory=PropertyMap)

    def __post_init__(self):
        ASSERT_NON_EMPTY(self.relation, "edge relation")
        if not isinstance(self.properties, PropertyMap):
            object.__setattr__(self, "properties", PropertyMap(self.properties))
        if any(True for _ in self.properties.slot_items()):
            raise ValidationException(
                "edges only carry plain properties; exclusive relations live on entities",
                self.id,
            )

    @classmethod
    def create(
        cls,
        source: str,
        relation: str,
        target: str,
        interval: TemporalInterval = None,
        properties: PropertyMap = None,
    ) -> "Edge":
        """Build an edge whose id is derived from its identity."""
        interval = interval if interval is not None else TemporalInterval.always()
        return cls(
            id=edge_id_for(source, relation, target, interval),
            source=source,
            relation=relation,
            target=target,
            interval=interval,
            properties=properties if properties is not None else PropertyMap(),
        )

    @property
    def identity(self):
        return (self.source, self.relation, self.target, self.interval)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "id": self.id,
            "source": self.source,
            "relation": self.relation,
            "target": self.target,
            "interval": self.interval.to_dict(),
            "properties": self.properties.to_dict(),
        }

    @classmethod
    def from_dict(cls, data: Mapping[str, Any]) -> "Edge":
        return cls(
            id=data["id"],
            source=data["source"],
            relation=data["relation"],
            target=data["target"],
            interval=TemporalInterval.from_dict(data.get("interval", {})),
            properties=PropertyMap.from_dict(data.get("properties", {})),
        )


def edge_id_for(
    source: str, relation: str, target: str, interval: TemporalInterval
) -> str:
    return "e-" + stable_hash(
        source,
        relation,
        target,
        str(interval.start.to_iso()),
        str(interval.end.to_iso()),
    )


@dataclass(frozen=True)
class RelationSchema:
    subject_type: str
    relation: str
    object_type: str
    exclusive: bool = False

    def __post_init__(self):
        ASSERT_NON_EMPTY(self.relation, "schema relation")

    @property
    def key(self):
        return (self.subject_type, self.relation, self.object_type)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "subject_type": self.subject_type,
            "relation": self.relation,
            "object_type": self.object_type,
            "exclusive": self.exclusive,
        }

    @classmethod
    def from_dict(cls, data: Mapping[str, Any]) -> "RelationSchema":
        return cls(
            subject_type=data["subject_type"],
            relation=data["relation"],
            object_type=data["object_type"],
            exclusive=bool(data.get("exclusive", False)),
        )

    def __str__(self):
        return "{} -[{}]-> {}".format(self.subject_type, self.relation, self.object_type)


def render_entity(
    type: str, name: str, description: str = "", properties: PropertyMap = None
) -> str:
    """``(<type>: <name>, desc: "...", props: {...})`` as shown to the oracle"""
    properties = properties if properties is not None else PropertyMap()
    return '({}: {}, desc: "{}", props: {})'.format(
        type, name, description, properties.render()
    )


def entity_id_for(type: str, name: str) -> str:
    return "v-" + stable_hash(type, name)
