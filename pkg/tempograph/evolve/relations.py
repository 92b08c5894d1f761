"""
Tempograph (c) 2026 The Tempograph Authors

SPDX-License-Identifier: MIT

Relation evolution: mapping extracted relation schemas onto registered ones
and deciding how a candidate edge changes the graph.

The edge update rules, with ``r`` the extracted relation and ``r*`` its
matched registered relation (``r`` itself when nothing matched):

1. no edge ``(v_s, r*, v_t)`` with the same interval         -> Insert
2. that edge exists and carries every candidate property     -> Skip
3. that edge exists but lacks some candidate property        -> Merge
4. ``r* != r`` and the edge ``(v_s, r*, v_t)`` exists          -> MapMerge
5. ``r* != r`` and no such edge exists                       -> MapInsert
"""

import logging
from typing import Optional

from ..config import EvolutionConfig
from ..embed import Encoder, EmbeddingIndex, topk
from ..graph import GraphStore
from ..types import (
    MergeAction,
    MergeKind,
    PropertyMap,
    RelationSchema,
    ResolvedEdge,
    SynonymMatch,
)
from ..types.exceptions import PreconditionException

logger = logging.getLogger(__name__)


def match_relation_synonym(
    candidate_schema: RelationSchema,
    store: GraphStore,
    schema_index: EmbeddingIndex,
    encoder: Encoder,
    config: EvolutionConfig,
) -> SynonymMatch:
    """
    The registered schema closest to the candidate. It matches when its
    cosine exceeds ``theta_relation``.
    """
    if not len(schema_index):
        return SynonymMatch(None)
    query = encoder.encode_schema(
        candidate_schema.subject_type,
        candidate_schema.relation,
        candidate_schema.object_type,
    )
    key, score = topk(schema_index, query, 1)[0]
    if score <= config.theta_relation:
        return SynonymMatch(None, score)
    matched = next(s for s in store.schemas if str(s) == key)
    if matched.relation != candidate_schema.relation:
        logger.debug(
            "Relation %r maps to %r (%.3f)",
            candidate_schema.relation,
            matched.relation,
            score,
        )
    return SynonymMatch(matched.relation, score, matched.exclusive)


def is_property_subset(candidate: PropertyMap, existing: PropertyMap) -> bool:
    """
    Key-wise containment: every candidate key exists in ``existing`` with an
    equal plain value, or, for candidate sets, with every candidate value
    present in the existing set.
    """
    for key in candidate:
        if key not in existing:
            return False
        value, stored = candidate[key], existing[key]
        if isinstance(value, tuple):
            if not isinstance(stored, tuple):
                return False
            stored_values = {c.value for c in stored}
            if any(c.value not in stored_values for c in value):
                return False
        elif value != stored:
            return False
    return True


def resolve_edge_action(
    candidate: ResolvedEdge, matched_relation: Optional[str], store: GraphStore
) -> MergeAction:
    """Apply the edge update rules to one aligned candidate edge."""
    for endpoint in (candidate.source, candidate.target):
        if not store.has_entity(endpoint):
            raise PreconditionException("edge endpoint is not aligned", endpoint)

    relation = matched_relation if matched_relation is not None else candidate.relation
    existing = [
        e
        for e in store.find_edges(candidate.source, relation, candidate.target)
        if e.interval == candidate.interval
    ]

    if relation != candidate.relation:
        if existing:
            return MergeAction(
                MergeKind.MapMerge,
                relation,
                "synonym relation exists with same endpoints",
            )
        return MergeAction(
            MergeKind.MapInsert, relation, "synonym relation exists with different edges"
        )
    if not existing:
        return MergeAction(MergeKind.Insert, reason="no matching relation between pair")
    if is_property_subset(candidate.properties, existing[0].properties):
        return MergeAction(
            MergeKind.Skip, reason="exact same relation exists, no new info"
        )
    return MergeAction(MergeKind.Merge, reason="exact same relation exists, new info")


def resolve_exclusive_action(
    subject: str,
    relation: str,
    matched_relation: Optional[str],
    value: str,
    context: str,
    store: GraphStore,
) -> MergeAction:
    """
    The same rules for exclusive relations, whose values live in the subject's
    property slot instead of parallel edges. A value already observed under
    the same context carries no new information.
    """
    if not store.has_entity(subject):
        raise PreconditionException("subject is not aligned", subject)
    target = matched_relation if matched_relation is not None else relation
    mapped = target != relation
    properties = store.get_entity(subject).properties
    if target not in properties:
        if mapped:
            return MergeAction(MergeKind.MapInsert, target, "new slot under synonym")
        return MergeAction(MergeKind.Insert, reason="no value recorded for slot")
    slot = properties.slot(target)
    if any(c.value == value and context in c.contexts for c in slot):
        return MergeAction(MergeKind.Skip, reason="value already observed in context")
    if mapped:
        return MergeAction(MergeKind.MapMerge, target, "merge into synonym slot")
    return MergeAction(MergeKind.Merge, reason="merge into existing slot")
