"""
Tempograph (c) 2026 The Tempograph Authors

SPDX-License-Identifier: MIT

Applying extracted partial graphs to a store, one atomic batch per document.
"""

import logging
from dataclasses import replace
from typing import Dict, Iterable, Optional, Tuple

from ..config import EvolutionConfig
from ..embed import Encoder, EmbeddingIndex, entity_text
from ..graph import GraphStore
from ..oracle import Oracle
from ..types import (
    CandidateEdge,
    CandidateEntity,
    Document,
    Edge,
    Entity,
    MergeKind,
    MergeReport,
    Observation,
    PartialGraph,
    RelationSchema,
    ResolvedEdge,
    Timestamp,
    UNKNOWN,
)
from ..types.exceptions import TempographBaseException
from .alignment import align_entity, new_entity_id, merge_plain_properties
from .confidence import merge_exclusive_property
from .relations import (
    match_relation_synonym,
    resolve_edge_action,
    resolve_exclusive_action,
)

logger = logging.getLogger(__name__)


class Evolver:
    """
    Owns the two embedding indexes next to a store and keeps them current
    while documents are merged. ``now`` is the clock every confidence is
    computed against.
    """

    def __init__(
        self,
        store: GraphStore,
        oracle: Oracle,
        encoder: Encoder,
        config: EvolutionConfig = None,
        now: Timestamp = UNKNOWN,
    ):
        self.store = store
        self.oracle = oracle
        self.encoder = encoder
        self.config = config if config is not None else EvolutionConfig()
        self.now = now
        self.entity_index = EmbeddingIndex.for_entities(store, encoder)
        self.schema_index = EmbeddingIndex.for_schemas(store, encoder)

    def rebuild_indexes(self):
        self.entity_index = EmbeddingIndex.for_entities(self.store, self.encoder)
        self.schema_index = EmbeddingIndex.for_schemas(self.store, self.encoder)

    # ---- batches

    def apply_partial_graph(self, partial: PartialGraph) -> MergeReport:
        """
        Align every candidate entity, then evolve every candidate edge. The
        whole partial graph is one store batch: any error rolls the store
        back and leaves the indexes rebuilt from it.
        """
        report = MergeReport()
        try:
            with self.store.batch():
                ids: Dict[str, str] = dict()
                for candidate in partial.entities:
                    ids[candidate.key] = self._contextualize_entity(
                        candidate, partial.document, report
                    )
                for edge in partial.edges:
                    self._evolve_edge(edge, ids, partial.document, report)
        except BaseException:
            self.rebuild_indexes()
            raise
        logger.info(
            "Applied %s: %d inserted, %d aligned, edges %s",
            partial.document.id,
            report.entities_inserted,
            report.entities_aligned,
            report.edges_by_kind,
        )
        return report

    def update_from_corpus(self, documents: Iterable[Document]) -> MergeReport:
        """
        Extract and apply every document in order. A failing document is
        recorded and skipped unless ``fail_fast`` is set.
        """
        report = MergeReport()
        for document in documents:
            try:
                partial = self.oracle.extract_partial_kg(document)
                report.extend(self.apply_partial_graph(partial))
            except TempographBaseException as ex:
                if self.config.fail_fast:
                    raise
                logger.warning("Skipping document %s: %s", document.id, ex)
                report.failures.append(
                    {
                        "stage": "document",
                        "document": document.id,
                        "error": type(ex).__name__,
                        "message": ex.plain_message(),
                    }
                )
            self.entity_index.refresh_entities(self.store, self.encoder)
            self.schema_index.refresh_schemas(self.store, self.encoder)
        return report

    # ---- entities

    def _contextualize_entity(
        self, candidate: CandidateEntity, document: Document, report: MergeReport
    ) -> str:
        result = align_entity(
            candidate,
            self.store,
            self.entity_index,
            self.oracle,
            self.encoder,
            self.config,
        )
        if result.aligned:
            stored = self.store.get_entity(result.target_id)
            merged, conflicts = merge_plain_properties(
                stored.properties, candidate.properties
            )
            if merged != stored.properties:
                self.store.upsert_entity(replace(stored, properties=merged))
            report.record(
                "entity",
                document=document.id,
                candidate=candidate.key,
                outcome="aligned",
                entity=result.target_id,
                score=result.score,
                conflicts=conflicts,
            )
            return result.target_id

        return self._insert_entity(candidate, document, report, result.score)

    def _insert_entity(
        self,
        candidate: CandidateEntity,
        document: Document,
        report: MergeReport,
        score: float = 0.0,
    ) -> str:
        entity_id = new_entity_id(self.store, candidate.type, candidate.name)
        entity = Entity(
            id=entity_id,
            type=candidate.type,
            name=candidate.name,
            description=candidate.description,
            properties=dict(candidate.properties.plain_items()),
        )
        self.store.upsert_entity(entity)
        text = entity_text(entity.type, entity.name, entity.description)
        self.entity_index.upsert(entity_id, self.encoder.encode_text(text), text)
        report.record(
            "entity",
            document=document.id,
            candidate=candidate.key,
            outcome="inserted",
            entity=entity_id,
            score=score,
            conflicts=0,
        )
        return entity_id

    # ---- relations

    def _register_relation(self, edge: CandidateEdge) -> Tuple[str, bool, float]:
        """
        Map the edge's schema onto the registry. Returns the relation to
        store under, its exclusive flag and the synonym score.
        """
        schema = RelationSchema(
            edge.subject_type, edge.relation, edge.object_type, edge.exclusive
        )
        match = match_relation_synonym(
            schema, self.store, self.schema_index, self.encoder, self.config
        )
        if match.matched:
            relation, exclusive = match.relation, match.exclusive
        else:
            relation = edge.relation
            known = self.store.relation_exclusive(relation)
            exclusive = edge.exclusive if known is None else known
        if relation == edge.relation:
            self.store.register_schema(replace(schema, exclusive=exclusive))
            self.schema_index.refresh_schemas(self.store, self.encoder)
        if exclusive != edge.exclusive:
            logger.warning(
                "Relation %r is registered as %sexclusive, extraction disagrees",
                relation,
                "" if exclusive else "non-",
            )
        return relation, exclusive, match.score

    def _evolve_edge(
        self,
        edge: CandidateEdge,
        ids: Dict[str, str],
        document: Document,
        report: MergeReport,
    ):
        relation, exclusive, synonym_score = self._register_relation(edge)
        source = ids[edge.source_key]
        fields = dict(
            document=document.id,
            relation=edge.relation,
            source=source,
            exclusive=exclusive,
            synonym_score=synonym_score,
        )
        if exclusive:
            self._evolve_exclusive(edge, source, relation, document, report, fields)
        else:
            target = self._object_entity(edge, ids, document, report)
            self._evolve_plain(edge, source, relation, target, report, fields)

    def _object_entity(
        self,
        edge: CandidateEdge,
        ids: Dict[str, str],
        document: Document,
        report: MergeReport,
    ) -> str:
        """
        The stored object of a non-exclusive edge. An object extracted as a
        plain value is aligned as an entity of its own.
        """
        if edge.target_key in ids:
            return ids[edge.target_key]
        candidate = CandidateEntity(
            key="{}:{}".format(edge.object_type, edge.object_value),
            type=edge.object_type,
            name=edge.object_value,
        )
        ids[candidate.key] = self._contextualize_entity(candidate, document, report)
        return ids[candidate.key]

    def _evolve_exclusive(
        self,
        edge: CandidateEdge,
        subject: str,
        relation: str,
        document: Document,
        report: MergeReport,
        fields: Dict,
    ):
        context = document.id + (": " + edge.context if edge.context else "")
        action = resolve_exclusive_action(
            subject,
            edge.relation,
            relation if relation != edge.relation else None,
            edge.object_value,
            context,
            self.store,
        )
        if action.kind != MergeKind.Skip:
            stored = self.store.get_entity(subject)
            slot = stored.properties.slot(relation)
            slot = merge_exclusive_property(
                slot,
                Observation(
                    edge.object_value,
                    context,
                    document.published_at,
                    document.source_weight,
                ),
                self.config,
                self.now,
            )
            self.store.upsert_entity(
                replace(stored, properties=stored.properties.with_value(relation, slot))
            )
        report.record(
            "edge",
            action=action.kind.name,
            rule=action.kind.rule,
            mapped_relation=action.mapped_relation,
            target=None,
            value=edge.object_value,
            context=context,
            reason=action.reason,
            conflicts=0,
            **fields,
        )

    def _evolve_plain(
        self,
        edge: CandidateEdge,
        source: str,
        relation: str,
        target: str,
        report: MergeReport,
        fields: Dict,
    ):
        action = resolve_edge_action(
            ResolvedEdge(source, edge.relation, target, edge.interval, edge.properties),
            relation if relation != edge.relation else None,
            self.store,
        )
        conflicts = 0
        if action.kind in (MergeKind.Insert, MergeKind.MapInsert):
            self.store.insert_edge(
                Edge.create(source, relation, target, edge.interval, edge.properties)
            )
        elif action.kind in (MergeKind.Merge, MergeKind.MapMerge):
            existing = self._matching_edge(source, relation, target, edge)
            merged, conflicts = merge_plain_properties(
                existing.properties, edge.properties
            )
            if merged != existing.properties:
                self.store.replace_edge_properties(existing.id, merged)
        report.record(
            "edge",
            action=action.kind.name,
            rule=action.kind.rule,
            mapped_relation=action.mapped_relation,
            target=target,
            interval=edge.interval.to_dict(),
            reason=action.reason,
            conflicts=conflicts,
            **fields,
        )

    def _matching_edge(
        self, source: str, relation: str, target: str, edge: CandidateEdge
    ) -> Optional[Edge]:
        for existing in self.store.find_edges(source, relation, target):
            if existing.interval == edge.interval:
                return existing
        return None


def apply_partial_graph(
    partial: PartialGraph,
    store: GraphStore,
    oracle: Oracle,
    encoder: Encoder,
    config: EvolutionConfig = None,
    now: Timestamp = UNKNOWN,
) -> MergeReport:
    return Evolver(store, oracle, encoder, config, now).apply_partial_graph(partial)


def update_from_corpus(
    documents: Iterable[Document],
    store: GraphStore,
    oracle: Oracle,
    encoder: Encoder,
    config: EvolutionConfig = None,
    now: Timestamp = UNKNOWN,
) -> MergeReport:
    return Evolver(store, oracle, encoder, config, now).update_from_corpus(documents)


def corpus_clock(documents: Iterable[Document]) -> Timestamp:
    """The newest known publication date of ``documents``, or unknown."""
    known = [d.published_at.value for d in documents if d.published_at.known]
    return Timestamp(max(known)) if known else UNKNOWN
