"""
Tempograph (c) 2026 The Tempograph Authors

SPDX-License-Identifier: MIT

Beam exploration from anchor entities. Each depth selects the best scoring
relations of every frontier entity, verbalises the matching edges, scores
them against the question and keeps the ``beam_width`` best extensions
across the whole frontier. Paths never revisit an entity.
"""

import logging
import math
from dataclasses import replace
from typing import Any, Dict, List, Optional, Sequence, Tuple

from ..config import ReasonerConfig
from ..embed import Encoder, T_Vector, cosine_sim
from ..graph import GraphStore
from ..helpers import normalize_answer
from ..oracle import Oracle
from ..types import (
    CandidatePath,
    Edge,
    PathHop,
    ReasoningPath,
    RouteTrace,
    Timestamp,
    UNKNOWN,
)
from ..types.exceptions import PreconditionException, ASSERT_IN_RANGE

logger = logging.getLogger(__name__)

TRIPLET_TEMPLATE = "{source} {relation} {target} from {start} to {end}"


def verbalize(edge: Edge, store: GraphStore) -> str:
    return TRIPLET_TEMPLATE.format(
        source=store.get_entity(edge.source).name,
        relation=edge.relation,
        target=store.get_entity(edge.target).name,
        start=edge.interval.start.render(),
        end=edge.interval.end.render(),
    )


def score_path(path: ReasoningPath) -> float:
    """The anchor score times every hop's relation and triplet score."""
    ASSERT_IN_RANGE(path.anchor_score, 0.0, 1.0, "anchor score")
    factors = [path.anchor_score]
    for hop in path.hops:
        ASSERT_IN_RANGE(hop.relation_score, 0.0, 1.0, "relation score")
        ASSERT_IN_RANGE(hop.triplet_score, 0.0, 1.0, "triplet score")
        factors.append(hop.relation_score)
        factors.append(hop.triplet_score)
    return math.prod(factors)


def with_confidence(path: ReasoningPath) -> ReasoningPath:
    return replace(path, confidence=score_path(path))


def anchor_paths(anchors: Sequence[Tuple[str, float]]) -> List[ReasoningPath]:
    return [with_confidence(ReasoningPath(anchor, score)) for anchor, score in anchors]


def select_relations(
    entity: str,
    question: str,
    subgoals: Sequence[str],
    store: GraphStore,
    oracle: Oracle,
    beam_width: int,
) -> List[Tuple[str, float]]:
    relations = store.out_relations(entity)
    if not relations:
        return []
    scores = oracle.score_relations(question, subgoals, relations)
    ranked = sorted(
        ((r, float(scores.get(r, 0.0))) for r in relations),
        key=lambda item: (-item[1], item[0]),
    )
    return ranked[:beam_width]


def explore_step(
    frontier: Sequence[ReasoningPath],
    question: str,
    subgoals: Sequence[str],
    store: GraphStore,
    oracle: Oracle,
    encoder: Encoder,
    config: ReasonerConfig,
    question_vector: Optional[T_Vector] = None,
) -> Tuple[List[ReasoningPath], Dict[str, Any]]:
    """
    Extend the frontier by one hop. Returns the kept extensions, best first,
    and a record of the selected relations and triplets.
    """
    if question_vector is None:
        question_vector = encoder.encode_text(question)

    selected_relations: Dict[str, List[Tuple[str, float]]] = dict()
    triplet_scores: Dict[str, Tuple[str, float]] = dict()
    extensions = []
    for path in frontier:
        entity = path.terminal
        if entity not in selected_relations:
            selected_relations[entity] = select_relations(
                entity, question, subgoals, store, oracle, config.beam_width
            )
        visited = set(path.entities)
        for relation, relation_score in selected_relations[entity]:
            for edge in store.find_edges(entity, relation):
                if edge.target in visited:
                    continue
                if edge.id not in triplet_scores:
                    text = verbalize(edge, store)
                    score = max(
                        0.0, cosine_sim(question_vector, encoder.encode_text(text))
                    )
                    triplet_scores[edge.id] = (text, score)
                text, score = triplet_scores[edge.id]
                hop = PathHop(
                    relation=relation,
                    relation_score=relation_score,
                    target=edge.target,
                    triplet_score=score,
                    interval=edge.interval,
                    edge_id=edge.id,
                    text=text,
                )
                extensions.append(with_confidence(path.extend(hop)))

    extensions.sort(key=lambda p: (-p.hops[-1].triplet_score, p.key))
    kept = extensions[: config.beam_width]
    record = {
        "stage": "explore",
        "relations": {
            entity: [[r, s] for r, s in ranked]
            for entity, ranked in sorted(selected_relations.items())
        },
        "triplets": [
            {"path": list(p.key), "text": p.hops[-1].text, "score": p.hops[-1].triplet_score}
            for p in kept
        ],
        "dropped": len(extensions) - len(kept),
    }
    return kept, record


def candidate_paths(paths: Sequence[ReasoningPath], store: GraphStore) -> List[CandidatePath]:
    out = []
    for path in paths:
        terminal = store.get_entity(path.terminal)
        if path.hops:
            text = "; ".join(h.text for h in path.hops)
        else:
            text = store.get_entity(path.anchor).name
        out.append(
            CandidatePath(
                text=text,
                terminal_name=terminal.name,
                terminal_type=terminal.type,
                confidence=path.confidence,
                hops=path.length,
            )
        )
    return out


def explore_route(
    route: Sequence[str],
    anchors: Sequence[Tuple[str, float]],
    question: str,
    store: GraphStore,
    oracle: Oracle,
    encoder: Encoder,
    config: ReasonerConfig,
    query_time: Timestamp = UNKNOWN,
) -> RouteTrace:
    """
    Explore from the anchors until the oracle judges the question answered,
    ``max_depth`` is reached or no extension remains. Every retained path of
    every depth is returned.
    """
    if not anchors:
        raise PreconditionException("exploration needs at least one anchor", question)

    question_vector = encoder.encode_text(question)
    paths = anchor_paths(anchors)
    frontier = list(paths)
    records: List[Dict[str, Any]] = []
    answered, judged, depth = False, "", 0

    while depth < config.max_depth:
        frontier, record = explore_step(
            frontier, question, route, store, oracle, encoder, config, question_vector
        )
        if not frontier:
            records.append(dict(record, depth=depth + 1, exhausted=True))
            break
        depth += 1
        paths.extend(frontier)
        judgement = oracle.judge_answer(
            question, query_time, route, candidate_paths(paths, store)
        )
        records.append(
            dict(
                record,
                depth=depth,
                answered=judgement.answered,
                answer=judgement.answer,
            )
        )
        if judgement.answered:
            answered, judged = True, judgement.answer
            break

    return RouteTrace(
        paths=tuple(paths),
        answered=answered,
        judged_answer=judged,
        depth=depth,
        vote_pool=tuple(vote_pool(paths, answered, judged, store)),
        records=tuple(records),
    )


def vote_pool(
    paths: Sequence[ReasoningPath], answered: bool, judged: str, store: GraphStore
) -> List[ReasoningPath]:
    """
    The paths a route votes with: those ending in the judged answer, or every
    path that left its anchor when the judge gave none. Anchors only vote
    when nothing else is left.
    """
    if answered:
        wanted = normalize_answer(judged)
        supporting = [
            p
            for p in paths
            if normalize_answer(store.get_entity(p.terminal).name) == wanted
        ]
        if supporting:
            return supporting
    moved = [p for p in paths if p.hops]
    return moved if moved else list(paths)
