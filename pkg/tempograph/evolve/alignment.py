"""
Tempograph (c) 2026 The Tempograph Authors

SPDX-License-Identifier: MIT
"""

import logging
from typing import Tuple

from ..config import EvolutionConfig
from ..embed import Encoder, EmbeddingIndex, topk, entity_text
from ..graph import GraphStore
from ..oracle import Oracle
from ..types import (
    AlignmentResult,
    CandidateEntity,
    PropertyMap,
    entity_id_for,
)

logger = logging.getLogger(__name__)


def align_entity(
    candidate: CandidateEntity,
    store: GraphStore,
    index: EmbeddingIndex,
    oracle: Oracle,
    encoder: Encoder,
    config: EvolutionConfig,
) -> AlignmentResult:
    """
    Find the stored entity an extracted one refers to. The candidate is
    encoded over type, name and description, the ``align_topk`` nearest
    stored entities are reranked by the oracle on the same canonical text,
    and the best one is returned when its score reaches ``theta_entity``.
    Otherwise the candidate is new.
    """
    if not len(index):
        return AlignmentResult(None)
    query = encoder.encode_entity(candidate.type, candidate.name, candidate.description)
    rendering = entity_text(candidate.type, candidate.name, candidate.description)
    best_id, best_score = None, -1.0
    for key, _ in topk(index, query, config.align_topk):
        if not store.has_entity(key):
            continue
        stored = store.get_entity(key)
        score = oracle.align_score(
            rendering, entity_text(stored.type, stored.name, stored.description)
        )
        if score > best_score or (score == best_score and key < best_id):
            best_id, best_score = key, score
    if best_id is not None and best_score >= config.theta_entity:
        logger.debug("Aligned %s to %s (%.3f)", candidate.name, best_id, best_score)
        return AlignmentResult(best_id, best_score)
    return AlignmentResult(None, max(best_score, 0.0))


def new_entity_id(store: GraphStore, type: str, name: str) -> str:
    """Content derived id, suffixed when an unaligned namesake already exists."""
    base = entity_id_for(type, name)
    candidate, n = base, 1
    while store.has_entity(candidate):
        n += 1
        candidate = "{}-{}".format(base, n)
    return candidate


def merge_plain_properties(
    stored: PropertyMap, incoming: PropertyMap
) -> Tuple[PropertyMap, int]:
    """
    Add every plain property of ``incoming`` that ``stored`` lacks. Keys with
    a different stored value keep that value and count as conflicts.
    """
    merged = stored
    conflicts = 0
    for key, value in incoming.plain_items():
        if key not in stored:
            merged = merged.with_value(key, value)
        elif stored[key] != value:
            conflicts += 1
            logger.info(
                "Property conflict on %s: kept %r, ignored %r", key, stored[key], value
            )
    return merged, conflicts
