"""
Tempograph (c) 2026 The Tempograph Authors

SPDX-License-Identifier: MIT
"""

import logging
from typing import Dict, List, Optional, Sequence, Tuple

from ..config import ReasonerConfig
from ..embed import Encoder, EmbeddingIndex, topk
from ..graph import GraphStore
from ..oracle import Oracle, candidate_key
from ..types import MentionAnalysis, Timestamp

logger = logging.getLogger(__name__)


def ground_query(
    question: str,
    query_time: Timestamp,
    route: Sequence[str],
    store: GraphStore,
    index: EmbeddingIndex,
    oracle: Oracle,
    encoder: Encoder,
    config: ReasonerConfig,
    mentions: Optional[MentionAnalysis] = None,
) -> List[Tuple[str, float]]:
    """
    Find the anchor entities of a question.

    Every mention is embedded together with its temporal context, the
    ``k_candidates`` nearest entities are scored by the oracle and the
    ``k_anchors`` best are kept. Anchors found by several mentions keep their
    highest score. Returns ``(entity id, score)`` pairs, best first.
    """
    if mentions is None:
        mentions = oracle.extract_mentions(question, query_time, route)
    if not len(index) or not len(mentions):
        return []

    anchors: Dict[str, float] = dict()
    for mention, temporal_context in mentions.pairs():
        query = encoder.encode_mention_with_time(mention, temporal_context)
        candidates = [
            key
            for key, _ in topk(index, query, config.k_candidates)
            if store.has_entity(key)
        ]
        if not candidates:
            continue
        relevance = oracle.score_entities(
            question,
            query_time,
            route,
            [store.describe_entity(key) for key in candidates],
        )
        scored = sorted(
            (
                (relevance.scores.get(candidate_key(i), 0.0), key)
                for i, key in enumerate(candidates)
            ),
            key=lambda item: (-item[0], item[1]),
        )
        for score, key in scored[: config.k_anchors]:
            anchors[key] = max(score, anchors.get(key, 0.0))
        logger.debug(
            "Mention %r grounded to %s", mention, [key for _, key in scored[:config.k_anchors]]
        )

    return sorted(anchors.items(), key=lambda item: (-item[1], item[0]))
