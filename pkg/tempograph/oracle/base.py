"""
Tempograph (c) 2026 The Tempograph Authors

SPDX-License-Identifier: MIT
"""

import logging
import threading
from abc import ABC, abstractmethod
from typing import Dict, List, Sequence

from ..types import (
    Timestamp,
    Document,
    PartialGraph,
    RoutePlan,
    MentionAnalysis,
    RelevanceScores,
    Judgement,
    CandidatePath,
)
from ..types.exceptions import OracleBudgetException

logger = logging.getLogger(__name__)


class Oracle(ABC):
    """
    Every judgment the engine cannot make from the graph alone: planning,
    mention extraction, relevance scoring, alignment, extraction and answer
    judging. All numeric outputs lie in [0, 1].
    """

    @abstractmethod
    def plan_routes(
        self, question: str, query_time: Timestamp, n_routes: int
    ) -> RoutePlan:
        pass

    @abstractmethod
    def extract_mentions(
        self, question: str, query_time: Timestamp, route: Sequence[str]
    ) -> MentionAnalysis:
        pass

    @abstractmethod
    def score_entities(
        self,
        question: str,
        query_time: Timestamp,
        route: Sequence[str],
        candidates: List[str],
    ) -> RelevanceScores:
        """
        Score rendered entity descriptions. Keys are ``ent_<i>`` by candidate
        position.
        """
        pass

    @abstractmethod
    def score_relations(
        self, question: str, subgoals: Sequence[str], relations: Dict[str, int]
    ) -> Dict[str, float]:
        pass

    @abstractmethod
    def align_score(self, candidate_rendering: str, kg_rendering: str) -> float:
        pass

    @abstractmethod
    def extract_partial_kg(self, document: Document) -> PartialGraph:
        pass

    @abstractmethod
    def judge_answer(
        self,
        question: str,
        query_time: Timestamp,
        route: Sequence[str],
        candidate_paths: List[CandidatePath],
    ) -> Judgement:
        pass


def candidate_key(position: int) -> str:
    return "ent_{}".format(position)


class BudgetedOracle(Oracle):
    """
    Wraps an oracle and counts its calls. Once ``budget`` calls were made
    every further call raises :class:`OracleBudgetException`. A budget of 0
    means unlimited. The counter is safe to share between threads.
    """

    def __init__(self, inner: Oracle, budget: int = 0):
        self.inner = inner
        self.budget = budget
        self.calls = 0
        self._lock = threading.Lock()

    def _spend(self):
        with self._lock:
            if self.budget and self.calls >= self.budget:
                raise OracleBudgetException(self.budget)
            self.calls += 1

    def plan_routes(self, question, query_time, n_routes):
        self._spend()
        return self.inner.plan_routes(question, query_time, n_routes)

    def extract_mentions(self, question, query_time, route):
        self._spend()
        return self.inner.extract_mentions(question, query_time, route)

    def score_entities(self, question, query_time, route, candidates):
        self._spend()
        return self.inner.score_entities(question, query_time, route, candidates)

    def score_relations(self, question, subgoals, relations):
        self._spend()
        return self.inner.score_relations(question, subgoals, relations)

    def align_score(self, candidate_rendering, kg_rendering):
        self._spend()
        return self.inner.align_score(candidate_rendering, kg_rendering)

    def extract_partial_kg(self, document):
        self._spend()
        return self.inner.extract_partial_kg(document)

    def judge_answer(self, question, query_time, route, candidate_paths):
        self._spend()
        return self.inner.judge_answer(question, query_time, route, candidate_paths)
