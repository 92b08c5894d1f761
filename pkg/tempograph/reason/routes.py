"""
Tempograph (c) 2026 The Tempograph Authors

SPDX-License-Identifier: MIT

Route selection. Every subgoal of a route gets a traversal complexity
estimate ``psi = (b * n) ** h`` and a route costs the sum over its subgoals.
"""

import logging
import math
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

from ..config import ReasonerConfig
from ..embed import Encoder, EmbeddingIndex, cosine_sim, topk
from ..graph import GraphStore
from ..oracle import Oracle
from ..types import (
    MentionAnalysis,
    RoutePlan,
    SubgoalEstimate,
    Timestamp,
    UNKNOWN,
)
from ..types.exceptions import ValidationException

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SelectedRoute:
    route: Tuple[str, ...]
    cost: int
    planner_index: int
    """Position of the route in the planner's output"""
    estimates: Tuple[SubgoalEstimate, ...] = ()

    def to_dict(self):
        return {
            "route": list(self.route),
            "cost": self.cost,
            "planner_index": self.planner_index,
            "estimates": [[e.b, e.n, e.h] for e in self.estimates],
        }


def estimate_subgoal(
    subgoal: str,
    anchors: Sequence[str],
    store: GraphStore,
    oracle: Oracle,
    query_time: Timestamp = UNKNOWN,
    default_hops: int = 3,
    mentions: Optional[MentionAnalysis] = None,
) -> SubgoalEstimate:
    """
    ``b`` and ``n`` are the mean distinct out-relation and out-edge counts of
    the anchors (rounded up), or the graph-wide medians without anchors. ``h``
    is the number of distinct mentions in the subgoal, capped at
    ``default_hops``. An empty store estimates ``(1, 1, 1)``.
    """
    if not len(store):
        return SubgoalEstimate()
    anchors = [a for a in anchors if store.has_entity(a)]
    if anchors:
        relations = [len(store.out_relations(a)) for a in anchors]
        edges = [sum(store.out_relations(a).values()) for a in anchors]
        b = sum(relations) / len(anchors)
        n = sum(edges) / len(anchors)
    else:
        b, n = store.degree_medians()
    if mentions is None:
        mentions = oracle.extract_mentions(subgoal, query_time, [subgoal])
    h = len(set(mentions.mentions))
    return SubgoalEstimate(
        b=max(1, math.ceil(b)),
        n=max(1, math.ceil(n)),
        h=min(default_hops, max(1, h)),
    )


def route_cost(route: Sequence[str], estimates: Sequence[SubgoalEstimate]) -> int:
    if len(route) != len(estimates):
        raise ValidationException(
            "one estimate per subgoal expected", (len(route), len(estimates))
        )
    return sum(e.psi for e in estimates)


def nearest_entities(
    mentions: MentionAnalysis, index: EmbeddingIndex, encoder: Encoder
) -> List[str]:
    """The closest indexed entity of every mention, by embedding only."""
    if not len(index):
        return []
    found = []
    for mention, temporal_context in mentions.pairs():
        query = encoder.encode_mention_with_time(mention, temporal_context)
        key, _ = topk(index, query, 1)[0]
        if key not in found:
            found.append(key)
    return found


def select_routes(
    plan: RoutePlan,
    store: GraphStore,
    oracle: Oracle,
    encoder: Encoder,
    index: EmbeddingIndex,
    config: ReasonerConfig,
    query_time: Timestamp = UNKNOWN,
) -> List[SelectedRoute]:
    """
    Cost every planned route, order by ascending cost (planner order on
    ties), drop routes whose text is a near duplicate of a cheaper kept one
    and keep at most ``n_routes``.
    """
    costed = []
    for i, route in enumerate(plan.routes):
        estimates = []
        for subgoal in route:
            mentions = oracle.extract_mentions(subgoal, query_time, [subgoal])
            estimates.append(
                estimate_subgoal(
                    subgoal,
                    nearest_entities(mentions, index, encoder),
                    store,
                    oracle,
                    query_time,
                    config.default_hops,
                    mentions,
                )
            )
        costed.append(
            SelectedRoute(route, route_cost(route, estimates), i, tuple(estimates))
        )
    costed.sort(key=lambda r: (r.cost, r.planner_index))

    selected: List[SelectedRoute] = []
    vectors = []
    for choice in costed:
        vector = encoder.encode_text(" ".join(choice.route))
        if any(cosine_sim(vector, v) > config.dedup_threshold for v in vectors):
            logger.debug("Dropping near duplicate route %s", choice.route)
            continue
        selected.append(choice)
        vectors.append(vector)
        if len(selected) == config.n_routes:
            break
    return selected
