"""
Tempograph (c) 2026 The Tempograph Authors

SPDX-License-Identifier: MIT

An offline oracle backed by the deterministic encoder. Every judgment is a
pure function of its inputs, which makes it the backend of the test suite
and of the fixture worlds.
"""

import logging
import re
from typing import Dict, List, Optional, Sequence

from ..embed import Encoder, HashingEncoder, cosine_sim
from ..helpers import tokenize, normalize_answer
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
from .base import Oracle, candidate_key
from .facts import parse_fact_block, partial_graph_from_facts

logger = logging.getLogger(__name__)

WORD_PATTERN = re.compile(r"[A-Za-z0-9][A-Za-z0-9'&\-]*")
TEMPORAL_PATTERN = re.compile(r"\b\d{4}-\d{2}-\d{2}\b|\b\d{4}\b")

MENTION_STOPWORDS = frozenset(
    (
        "which what who whom whose when where why how "
        "did does do is was were are has have had "
        "the a an in on at of for and or to by from with "
        "list name identify determine find"
    ).split()
)

TARGET_QUESTION_WORDS = ("which", "what")
TARGET_SKIP_WORDS = frozenset("is was are were did does do the a an".split())
PERSON_QUESTION_WORDS = ("who", "whom")

# the field labels of the entity and mention templates
RENDERING_LABEL = re.compile(r"(?:^|\|)\s*[a-z_]+:\s*")


def renormalize(raw: Dict[str, float]) -> Dict[str, float]:
    """
    Clamp negatives to zero and scale to a sum of one. All-zero inputs get
    the uniform distribution.
    """
    if not raw:
        return {}
    clamped = {k: max(0.0, v) for k, v in raw.items()}
    total = sum(clamped.values())
    if total <= 0.0:
        return {k: 1.0 / len(clamped) for k in clamped}
    return {k: min(1.0, v / total) for k, v in clamped.items()}


def strip_labels(rendering: str) -> str:
    return RENDERING_LABEL.sub(" ", rendering).strip()


def extract_capitalized_mentions(text: str) -> List[str]:
    """
    Maximal runs of capitalised words that are separated only by whitespace.
    Question words, auxiliaries and other stopwords break runs. Possessive
    ``'s`` suffixes are dropped. Mentions are de-duplicated in order.
    """
    mentions: List[str] = []
    run: List[str] = []
    last_end: Optional[int] = None

    def flush():
        if run:
            mention = " ".join(run)
            if mention not in mentions:
                mentions.append(mention)
            run.clear()

    for match in WORD_PATTERN.finditer(text):
        word = match.group(0)
        if word.endswith("'s"):
            word = word[:-2]
        adjacent = last_end is not None and not text[last_end : match.start()].strip()
        last_end = match.end()
        if not word or not word[0].isupper() or word.lower() in MENTION_STOPWORDS:
            flush()
            continue
        if not adjacent:
            flush()
        run.append(word)
    flush()
    return mentions


def extract_temporal_context(text: str) -> str:
    """Every explicit date or four digit year in the text, space separated."""
    return " ".join(TEMPORAL_PATTERN.findall(text))


def answer_target(subgoal: str) -> Optional[str]:
    """
    The word a judged answer must match: the first content word after
    "which"/"what", or "person" for "who" questions. ``None`` when the
    subgoal names no target.
    """
    tokens = tokenize(subgoal)
    for i, token in enumerate(tokens):
        if token in PERSON_QUESTION_WORDS:
            return "person"
        if token in TARGET_QUESTION_WORDS:
            for follower in tokens[i + 1 :]:
                if follower not in TARGET_SKIP_WORDS:
                    return follower
            return None
    return None


def matches_target(target: str, path: CandidatePath) -> bool:
    tokens = set(tokenize(path.terminal_type)) | set(tokenize(path.terminal_name))
    if target in tokens:
        return True
    return target.endswith("s") and target[:-1] in tokens


class DeterministicOracle(Oracle):
    def __init__(self, encoder: Optional[Encoder] = None):
        self.encoder = encoder if encoder is not None else HashingEncoder()

    def plan_routes(
        self, question: str, query_time: Timestamp, n_routes: int
    ) -> RoutePlan:
        return RoutePlan(reason="whole question as a single subgoal", routes=[[question]])

    def extract_mentions(
        self, question: str, query_time: Timestamp, route: Sequence[str]
    ) -> MentionAnalysis:
        mentions = extract_capitalized_mentions(question)
        context = extract_temporal_context(question)
        return MentionAnalysis(mentions, [context] * len(mentions))

    def score_entities(
        self,
        question: str,
        query_time: Timestamp,
        route: Sequence[str],
        candidates: List[str],
    ) -> RelevanceScores:
        query = self.encoder.encode_text(question)
        raw = {
            candidate_key(i): cosine_sim(query, self.encoder.encode_text(text))
            for i, text in enumerate(candidates)
        }
        return RelevanceScores(
            reason="cosine similarity to the question", scores=renormalize(raw)
        )

    def score_relations(
        self, question: str, subgoals: Sequence[str], relations: Dict[str, int]
    ) -> Dict[str, float]:
        query = self.encoder.encode_text(" ".join(subgoals))
        raw = {
            relation: cosine_sim(query, self.encoder.encode_text(relation))
            for relation in sorted(relations)
        }
        return renormalize(raw)

    def align_score(self, candidate_rendering: str, kg_rendering: str) -> float:
        return max(
            0.0,
            cosine_sim(
                self.encoder.encode_text(strip_labels(candidate_rendering)),
                self.encoder.encode_text(strip_labels(kg_rendering)),
            ),
        )

    def extract_partial_kg(self, document: Document) -> PartialGraph:
        return partial_graph_from_facts(document, parse_fact_block(document.text))

    def judge_answer(
        self,
        question: str,
        query_time: Timestamp,
        route: Sequence[str],
        candidate_paths: List[CandidatePath],
    ) -> Judgement:
        target = answer_target(route[-1] if route else question)
        if target is None:
            return Judgement(answered=False)
        hits = [p for p in candidate_paths if p.hops >= 1 and matches_target(target, p)]
        if not hits:
            return Judgement(answered=False)
        best = min(
            hits, key=lambda p: (-p.confidence, normalize_answer(p.terminal_name))
        )
        logger.debug("Judged %r as answered by %r", target, best.terminal_name)
        return Judgement(answered=True, answer=best.terminal_name)
