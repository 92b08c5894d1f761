"""
Tempograph (c) 2026 The Tempograph Authors

SPDX-License-Identifier: MIT

The in-memory temporal property graph.
"""

import logging
import statistics
import threading
from contextlib import contextmanager
from types import MappingProxyType
from typing import Dict, Iterator, List, Mapping, Optional, Set, Tuple

from ..types import (
    Entity,
    Edge,
    RelationSchema,
    PropertyMap,
    T_EntityId,
    T_EdgeId,
)
from ..types.exceptions import (
    ReferentialException,
    ValidationException,
)

logger = logging.getLogger(__name__)

T_Index = Dict[T_EntityId, Dict[str, Set[T_EdgeId]]]


class GraphStore:
    """
    Holds entities, temporally qualified edges and the relation schema
    registry of one graph.

    Writes happen in batches (see :meth:`batch`). A batch is atomic: if it
    raises, the store is rolled back to the state before the batch, and the
    revision is bumped exactly once per successful batch. Single mutations
    called outside of a batch open an implicit one.
    """

    entities: Mapping[T_EntityId, Entity]
    edges: Mapping[T_EdgeId, Edge]
    revision: int

    def __init__(self):
        self._entities: Dict[T_EntityId, Entity] = dict()
        self._edges: Dict[T_EdgeId, Edge] = dict()
        self._out_index: T_Index = dict()
        self._in_index: T_Index = dict()
        self._schemas: Dict[Tuple[str, str, str], RelationSchema] = dict()
        self.revision = 0

        self._lock = threading.RLock()
        self._batch_depth = 0
        self._saved_state = None

    # ---- read only views
    # Views are copies taken under the lock, later writes do not show through.

    @property
    def entities(self) -> Mapping[T_EntityId, Entity]:
        with self._lock:
            return MappingProxyType(dict(self._entities))

    @property
    def edges(self) -> Mapping[T_EdgeId, Edge]:
        with self._lock:
            return MappingProxyType(dict(self._edges))

    @property
    def schemas(self) -> List[RelationSchema]:
        """All registered schemas, sorted by (subject type, relation, object type)"""
        with self._lock:
            return [self._schemas[k] for k in sorted(self._schemas)]

    def has_entity(self, entity_id: T_EntityId) -> bool:
        with self._lock:
            return entity_id in self._entities

    def has_edge(self, edge_id: T_EdgeId) -> bool:
        with self._lock:
            return edge_id in self._edges

    def entity_ids(self) -> List[T_EntityId]:
        with self._lock:
            return sorted(self._entities)

    def get_entity(self, entity_id: T_EntityId) -> Entity:
        with self._lock:
            if entity_id not in self._entities:
                raise ReferentialException("unknown entity", entity_id)
            return self._entities[entity_id]

    def get_edge(self, edge_id: T_EdgeId) -> Edge:
        with self._lock:
            if edge_id not in self._edges:
                raise ReferentialException("unknown edge", edge_id)
            return self._edges[edge_id]

    def __len__(self):
        return len(self._entities)

    # ---- batches

    @contextmanager
    def batch(self) -> Iterator["GraphStore"]:
        """
        Group mutations into one atomic batch. Batches nest; only the outermost
        one bumps the revision or rolls back.
        """
        with self._lock:
            if self._batch_depth == 0:
                self._saved_state = self._snapshot_state()
            self._batch_depth += 1
            try:
                yield self
            except BaseException:
                self._batch_depth -= 1
                if self._batch_depth == 0:
                    self._restore_state(self._saved_state)
                    self._saved_state = None
                    logger.warning("Batch aborted, store rolled back")
                raise
            else:
                self._batch_depth -= 1
                if self._batch_depth == 0:
                    self._saved_state = None
                    self.revision += 1

    def _snapshot_state(self):
        return (
            dict(self._entities),
            dict(self._edges),
            {k: {r: set(ids) for r, ids in v.items()} for k, v in self._out_index.items()},
            {k: {r: set(ids) for r, ids in v.items()} for k, v in self._in_index.items()},
            dict(self._schemas),
            self.revision,
        )

    def _restore_state(self, state):
        (
            self._entities,
            self._edges,
            self._out_index,
            self._in_index,
            self._schemas,
            self.revision,
        ) = state

    # ---- mutations

    def upsert_entity(self, entity: Entity) -> T_EntityId:
        """
        Store an entity, replacing any stored entity with the same id wholesale.
        """
        if not isinstance(entity, Entity):
            raise ValidationException("expected an Entity", entity)
        with self.batch():
            self._check_property_kinds(entity.properties, entity.id)
            self._entities[entity.id] = entity
            self._out_index.setdefault(entity.id, dict())
            self._in_index.setdefault(entity.id, dict())
        return entity.id

    def insert_edge(self, edge: Edge) -> T_EdgeId:
        """
        Insert an edge and index it. Inserting an edge whose
        (source, relation, target, interval) is already stored is a no-op
        returning the stored edge's id.
        """
        with self.batch():
            for endpoint in (edge.source, edge.target):
                if endpoint not in self._entities:
                    raise ReferentialException("edge endpoint is not stored", endpoint)
            for existing in self.find_edges(edge.source, edge.relation, edge.target):
                if existing.interval == edge.interval:
                    return existing.id
            if edge.id in self._edges:
                raise ValidationException("edge id already in use", edge.id)
            self._edges[edge.id] = edge
            self._out_index[edge.source].setdefault(edge.relation, set()).add(edge.id)
            self._in_index[edge.target].setdefault(edge.relation, set()).add(edge.id)
        return edge.id

    def replace_edge_properties(self, edge_id: T_EdgeId, properties: PropertyMap):
        with self.batch():
            edge = self.get_edge(edge_id)
            self._edges[edge_id] = Edge(
                id=edge.id,
                source=edge.source,
                relation=edge.relation,
                target=edge.target,
                interval=edge.interval,
                properties=properties,
            )

    def remove_edge(self, edge_id: T_EdgeId):
        with self.batch():
            edge = self.get_edge(edge_id)
            del self._edges[edge_id]
            for index, endpoint in (
                (self._out_index, edge.source),
                (self._in_index, edge.target),
            ):
                ids = index[endpoint][edge.relation]
                ids.discard(edge_id)
                if not ids:
                    del index[endpoint][edge.relation]

    def remove_entity(self, entity_id: T_EntityId):
        """Remove an entity together with all edges touching it."""
        with self.batch():
            self.get_entity(entity_id)
            incident = set()
            for index in (self._out_index, self._in_index):
                for ids in index[entity_id].values():
                    incident.update(ids)
            for edge_id in sorted(incident):
                self.remove_edge(edge_id)
            del self._entities[entity_id]
            del self._out_index[entity_id]
            del self._in_index[entity_id]

    def register_schema(self, schema: RelationSchema) -> RelationSchema:
        """
        Register a relation schema. Re-registering an identical schema is a
        no-op; the exclusive flag of a relation can never change once set.
        """
        with self.batch():
            existing = self._schemas.get(schema.key)
            if existing is not None:
                if existing.exclusive != schema.exclusive:
                    raise ValidationException(
                        "exclusive flag of a registered schema is immutable", str(schema)
                    )
                return existing
            flag = self.relation_exclusive(schema.relation)
            if flag is not None and flag != schema.exclusive:
                raise ValidationException(
                    "relation {} is already registered with exclusive={}".format(
                        schema.relation, flag
                    ),
                    str(schema),
                )
            self._schemas[schema.key] = schema
            logger.debug("Registered schema %s (exclusive=%s)", schema, schema.exclusive)
            return schema

    # ---- queries

    def relation_exclusive(self, relation: str) -> Optional[bool]:
        """Whether a relation is exclusive, ``None`` if it was never registered."""
        with self._lock:
            for schema in self._schemas.values():
                if schema.relation == relation:
                    return schema.exclusive
        return None

    def find_edges(
        self,
        source: T_EntityId,
        relation: Optional[str] = None,
        target: Optional[T_EntityId] = None,
    ) -> List[Edge]:
        """
        All edges leaving ``source`` matching the filters that are set, sorted
        by edge id.
        """
        with self._lock:
            if source not in self._entities:
                raise ReferentialException("unknown source entity", source)
            by_relation = self._out_index[source]
            if relation is not None:
                ids = set(by_relation.get(relation, ()))
            else:
                ids = set()
                for rel_ids in by_relation.values():
                    ids.update(rel_ids)
            edges = [self._edges[i] for i in sorted(ids)]
        if target is not None:
            edges = [e for e in edges if e.target == target]
        return edges

    def out_relations(self, entity_id: T_EntityId) -> Dict[str, int]:
        """Distinct outgoing relation names with the number of edges carrying each."""
        with self._lock:
            if entity_id not in self._entities:
                raise ReferentialException("unknown entity", entity_id)
            return {
                rel: len(ids)
                for rel, ids in sorted(self._out_index[entity_id].items())
                if ids
            }

    def in_relations(self, entity_id: T_EntityId) -> Dict[str, int]:
        with self._lock:
            if entity_id not in self._entities:
                raise ReferentialException("unknown entity", entity_id)
            return {
                rel: len(ids)
                for rel, ids in sorted(self._in_index[entity_id].items())
                if ids
            }

    def degree_medians(self) -> Tuple[float, float]:
        """
        Graph-wide medians of (distinct out-relations, out-edges) per entity.
        Zero for an empty store.
        """
        with self._lock:
            if not self._entities:
                return 0.0, 0.0
            relations = []
            edges = []
            for entity_id in sorted(self._entities):
                counts = self.out_relations(entity_id)
                relations.append(len(counts))
                edges.append(sum(counts.values()))
            return statistics.median(relations), statistics.median(edges)

    def describe_entity(self, entity_id: T_EntityId) -> str:
        return self.get_entity(entity_id).render()

    def audit(self) -> List[str]:
        """
        Check that the adjacency indexes exactly mirror the stored edges.
        Returns a list of human readable problems, empty when consistent.
        """
        problems = []
        with self._lock:
            expected_out: T_Index = {eid: {} for eid in self._entities}
            expected_in: T_Index = {eid: {} for eid in self._entities}
            for edge in self._edges.values():
                for endpoint in (edge.source, edge.target):
                    if endpoint not in self._entities:
                        problems.append(
                            "edge {} has dangling endpoint {}".format(edge.id, endpoint)
                        )
                if edge.source in expected_out:
                    expected_out[edge.source].setdefault(edge.relation, set()).add(edge.id)
                if edge.target in expected_in:
                    expected_in[edge.target].setdefault(edge.relation, set()).add(edge.id)
            for name, actual, expected in (
                ("out", self._out_index, expected_out),
                ("in", self._in_index, expected_in),
            ):
                if set(actual) != set(expected):
                    problems.append("{}_index keys differ from entity ids".format(name))
                for eid in sorted(set(actual) & set(expected)):
                    got = {r: ids for r, ids in actual[eid].items() if ids}
                    if got != expected[eid]:
                        problems.append(
                            "{}_index entry of {} does not match its edges".format(
                                name, eid
                            )
                        )
            for entity in self._entities.values():
                for key, _ in entity.properties.slot_items():
                    if not self.relation_exclusive(key):
                        problems.append(
                            "entity {} holds a candidate set for non-exclusive {}".format(
                                entity.id, key
                            )
                        )
        return problems

    def _check_property_kinds(self, properties: PropertyMap, owner: str):
        for key in properties:
            exclusive = bool(self.relation_exclusive(key))
            if properties.is_slot(key) != exclusive:
                raise ValidationException(
                    "property {} of {} must {}be a candidate set".format(
                        key, owner, "" if exclusive else "not "
                    ),
                    key,
                )

    # ---- comparison helpers

    def copy(self) -> "GraphStore":
        """Independent copy with the same content and revision."""
        clone = GraphStore()
        with self._lock:
            state = self._snapshot_state()
        clone._restore_state(state)
        return clone

    def content_equals(self, other: "GraphStore", include_revision: bool = True) -> bool:
        return (
            self._entities == other._entities
            and self._edges == other._edges
            and self._schemas == other._schemas
            and (not include_revision or self.revision == other.revision)
        )

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, GraphStore):
            return False
        return self.content_equals(other)

    __hash__ = None

    def __repr__(self):
        return "GraphStore(entities={}, edges={}, schemas={}, revision={})".format(
            len(self._entities), len(self._edges), len(self._schemas), self.revision
        )
