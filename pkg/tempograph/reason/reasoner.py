"""
Tempograph (c) 2026 The Tempograph Authors

SPDX-License-Identifier: MIT
"""

import logging
from collections import Counter
from dataclasses import replace
from typing import Any, Dict, List, Optional

from ..config import ReasonerConfig
from ..embed import Encoder, EmbeddingIndex
from ..graph import GraphStore
from ..helpers import normalize_answer
from ..oracle import Oracle, BudgetedOracle
from ..types import (
    Answer,
    MentionAnalysis,
    ReasoningPath,
    RouteTrace,
    Timestamp,
    UNKNOWN,
)
from ..types.exceptions import NoAnswerException
from .exploration import explore_route
from .grounding import ground_query
from .routes import select_routes
from .synthesis import answer_by_voting, vote_masses

logger = logging.getLogger(__name__)


class Reasoner:
    """
    Answers questions over a store. Routes are planned and costed, then run
    cheapest first until ``consensus_min`` of them agree; the answer is the
    weighted vote over every route that ran.

    The reasoner only reads the store. The entity index is built once, pass
    ``index`` to share one between reasoners over the same store.
    """

    def __init__(
        self,
        store: GraphStore,
        oracle: Oracle,
        encoder: Encoder,
        config: ReasonerConfig = None,
        index: Optional[EmbeddingIndex] = None,
    ):
        self.store = store
        self.oracle = oracle
        self.encoder = encoder
        self.config = config if config is not None else ReasonerConfig()
        self.index = (
            index if index is not None else EmbeddingIndex.for_entities(store, encoder)
        )

    def answer_of(self, path: ReasoningPath) -> str:
        return self.store.get_entity(path.terminal).name

    def route_answer(self, trace: RouteTrace) -> str:
        if trace.answered:
            return normalize_answer(trace.judged_answer)
        if not trace.vote_pool:
            return ""
        return normalize_answer(answer_by_voting([trace.vote_pool], self.answer_of).value)

    def answer(self, question: str, query_time: Timestamp = UNKNOWN) -> Answer:
        oracle = BudgetedOracle(self.oracle, self.config.oracle_budget)
        records: List[Dict[str, Any]] = []

        plan = oracle.plan_routes(question, query_time, self.config.n_routes)
        records.append(
            {
                "stage": "plan",
                "reason": plan.reason,
                "routes": [list(r) for r in plan.routes],
            }
        )
        selected = select_routes(
            plan, self.store, oracle, self.encoder, self.index, self.config, query_time
        )
        for position, choice in enumerate(selected):
            records.append(dict(choice.to_dict(), stage="route_selected", position=position))

        traces: List[RouteTrace] = []
        positions: List[int] = []
        agreement: Counter = Counter()
        for position, choice in enumerate(selected):
            trace = self._run_route(
                position, list(choice.route), question, query_time, oracle, records
            )
            if trace is None:
                continue
            traces.append(trace)
            positions.append(position)
            route_answer = self.route_answer(trace)
            records.append(
                {
                    "stage": "route_answer",
                    "position": position,
                    "answered": trace.answered,
                    "answer": route_answer,
                    "depth": trace.depth,
                }
            )
            if route_answer:
                agreement[route_answer] += 1
                if agreement[route_answer] >= self.config.consensus_min:
                    records.append(
                        {"stage": "consensus", "answer": route_answer, "routes": len(traces)}
                    )
                    break

        if not any(t.vote_pool for t in traces):
            raise NoAnswerException("no route found an anchor entity", question)

        answer = answer_by_voting(
            [t.vote_pool for t in traces], self.answer_of, question, positions
        )
        records.append(
            {
                "stage": "vote",
                "masses": vote_masses(
                    [p for t in traces for p in t.vote_pool], self.answer_of
                ),
                "answer": answer.value,
                "confidence_mass": answer.confidence_mass,
                "oracle_calls": oracle.calls,
            }
        )
        logger.info(
            "Answered %r with %r (%d route(s), %d oracle calls)",
            question,
            answer.value,
            len(traces),
            oracle.calls,
        )
        return replace(answer, audit=tuple(records))

    def _run_route(
        self,
        position: int,
        route: List[str],
        question: str,
        query_time: Timestamp,
        oracle: Oracle,
        records: List[Dict[str, Any]],
    ) -> Optional[RouteTrace]:
        mentions = oracle.extract_mentions(question, query_time, route)
        if not len(mentions):
            mentions = MentionAnalysis([question], [""])
            records.append({"stage": "mention_fallback", "position": position})
        anchors = ground_query(
            question,
            query_time,
            route,
            self.store,
            self.index,
            oracle,
            self.encoder,
            self.config,
            mentions,
        )
        records.append(
            {
                "stage": "anchors",
                "position": position,
                "mentions": list(mentions.mentions),
                "temporal_contexts": list(mentions.temporal_contexts),
                "anchors": [[a, s] for a, s in anchors],
            }
        )
        if not anchors:
            return None
        trace = explore_route(
            route,
            anchors,
            question,
            self.store,
            oracle,
            self.encoder,
            self.config,
            query_time,
        )
        for record in trace.records:
            records.append(dict(record, position=position))
        return trace


def answer(
    question: str,
    query_time: Timestamp,
    store: GraphStore,
    oracle: Oracle,
    encoder: Encoder,
    config: ReasonerConfig = None,
    index: Optional[EmbeddingIndex] = None,
) -> Answer:
    return Reasoner(store, oracle, encoder, config, index).answer(question, query_time)
