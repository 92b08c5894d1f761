"""
Tempograph (c) 2026 The Tempograph Authors

SPDX-License-Identifier: MIT

The oracle backed by an OpenAI-compatible chat completions endpoint.
"""

import json
import logging
import time
from typing import Any, Callable, Dict, List, Optional, Sequence

from ..config import OracleConfig
from ..remote import JsonHttpClient, with_backoff
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
from ..types.exceptions import (
    OracleFormatException,
    TransportException,
    ValidationException,
)
from .base import Oracle, candidate_key
from .deterministic import extract_temporal_context
from .facts import fact_from_dict, partial_graph_from_facts
from .prompts import render_prompt, render_route

logger = logging.getLogger(__name__)

SUM_TOLERANCE = 0.05


def extract_json_block(text: str) -> Any:
    """
    Parse the first balanced ``{...}`` or ``[...]`` block of a response,
    ignoring brackets inside JSON strings.
    """
    starts = [i for i in (text.find("{"), text.find("[")) if i >= 0]
    if not starts:
        raise OracleFormatException("no JSON block in response", text)
    start = min(starts)
    opening = text[start]
    closing = "}" if opening == "{" else "]"
    depth = 0
    in_string = False
    escaped = False
    for pos in range(start, len(text)):
        char = text[pos]
        if in_string:
            if escaped:
                escaped = False
            elif char == "\\":
                escaped = True
            elif char == '"':
                in_string = False
            continue
        if char == '"':
            in_string = True
        elif char == opening:
            depth += 1
        elif char == closing:
            depth -= 1
            if depth == 0:
                try:
                    return json.loads(text[start : pos + 1])
                except json.JSONDecodeError as ex:
                    raise OracleFormatException(
                        "invalid JSON block: {}".format(ex.msg), text
                    )
    raise OracleFormatException("unbalanced JSON block", text)


def clamp_unit(value: Any, what: str) -> float:
    """Coerce to a float in [0, 1], logging any clamping."""
    try:
        number = float(value)
    except (TypeError, ValueError):
        raise OracleFormatException("{} is not a number".format(what), repr(value))
    if number != number:
        raise OracleFormatException("{} is NaN".format(what))
    if number < 0.0 or number > 1.0:
        logger.warning("Clamped out of range %s %r into [0, 1]", what, number)
        number = min(1.0, max(0.0, number))
    return number


def check_distribution(scores: Dict[str, float], what: str) -> Dict[str, float]:
    """Renormalise scores whose sum is off by more than the tolerance."""
    total = sum(scores.values())
    if scores and abs(total - 1.0) > SUM_TOLERANCE:
        logger.warning("Renormalised %s summing to %.3f", what, total)
        if total > 0:
            return {k: v / total for k, v in scores.items()}
    return scores


def render_query_time(query_time: Timestamp) -> str:
    return query_time.to_iso() or "unknown"


class RemoteOracle(Oracle):
    def __init__(
        self,
        config: OracleConfig,
        client: Optional[JsonHttpClient] = None,
        sleep: Callable[[float], None] = time.sleep,
    ):
        self.config = config
        self.client = client or JsonHttpClient(
            config.endpoint_url,
            config.api_key_env,
            timeout_s=config.timeout_s,
            max_in_flight=config.max_in_flight,
        )
        self.sleep = sleep

    def complete(self, prompt: str) -> str:
        payload = {
            "model": self.config.model_name,
            "messages": [{"role": "user", "content": prompt}],
            "temperature": self.config.temperature,
            "seed": self.config.seed,
        }
        response = self.client.post("chat/completions", payload)
        try:
            content = response["choices"][0]["message"]["content"]
        except (KeyError, IndexError, TypeError):
            raise OracleFormatException("malformed completion response", str(response))
        if not isinstance(content, str):
            raise OracleFormatException("completion content is not text", str(content))
        return content

    def ask(self, prompt: str, parse: Callable[[Any], Any], what: str):
        """
        Send a prompt and parse the first JSON block of the answer. Transport
        and format errors are retried with exponential backoff.
        """

        def attempt():
            return parse(extract_json_block(self.complete(prompt)))

        try:
            return with_backoff(
                attempt,
                self.config.max_retries,
                self.config.backoff_base_s,
                (OracleFormatException, TransportException),
                sleep=self.sleep,
                what=what,
            )
        except OracleFormatException as ex:
            ex.attempts = self.config.max_retries
            raise

    # ---- judgments

    def plan_routes(
        self, question: str, query_time: Timestamp, n_routes: int
    ) -> RoutePlan:
        prompt = render_prompt(
            "route_planning",
            self.config.domain_label,
            {"query": question, "query time": render_query_time(query_time)},
            n_routes=n_routes,
        )

        def parse(data):
            if not isinstance(data, dict) or not isinstance(data.get("routes"), list):
                raise OracleFormatException("route plan without routes", str(data))
            routes = []
            for route in data["routes"]:
                if not isinstance(route, list) or not route:
                    raise OracleFormatException("route is not a list", str(route))
                routes.append([str(step) for step in route])
            if not routes:
                raise OracleFormatException("route plan without routes", str(data))
            return RoutePlan(reason=str(data.get("reason", "")), routes=routes[:n_routes])

        return self.ask(prompt, parse, "route planning")

    def extract_mentions(
        self, question: str, query_time: Timestamp, route: Sequence[str]
    ) -> MentionAnalysis:
        prompt = render_prompt(
            "global_initialization",
            self.config.domain_label,
            {
                "query": question,
                "query time": render_query_time(query_time),
                "route": render_route(route),
            },
        )
        question_context = extract_temporal_context(question)

        def parse(data):
            if not isinstance(data, list):
                raise OracleFormatException("expected a list of entities", str(data))
            mentions, contexts = [], []
            for item in data:
                if isinstance(item, dict) and "entity" in item:
                    mention = str(item["entity"]).strip()
                    context = str(item.get("time") or "")
                else:
                    mention = str(item).strip()
                    context = extract_temporal_context(mention) or question_context
                if mention and mention not in mentions:
                    mentions.append(mention)
                    contexts.append(context)
            return MentionAnalysis(mentions, contexts)

        return self.ask(prompt, parse, "mention extraction")

    def score_entities(
        self,
        question: str,
        query_time: Timestamp,
        route: Sequence[str],
        candidates: List[str],
    ) -> RelevanceScores:
        if not candidates:
            raise ValidationException("relevance scoring needs at least one candidate")
        listing = "\n".join(
            "{}: {}".format(candidate_key(i), text) for i, text in enumerate(candidates)
        )
        prompt = render_prompt(
            "relevance_scoring",
            self.config.domain_label,
            {
                "query": question,
                "query time": render_query_time(query_time),
                "route": render_route(route),
                "topk entities str": listing,
            },
        )
        valid = {candidate_key(i) for i in range(len(candidates))}

        def parse(data):
            if not isinstance(data, dict):
                raise OracleFormatException("expected a JSON object", str(data))
            raw = data.get("relevant_entities", data.get("relevant entities"))
            if not isinstance(raw, dict):
                raise OracleFormatException("missing relevant_entities", str(data))
            scores = {
                key: clamp_unit(value, "relevance of " + key)
                for key, value in raw.items()
                if key in valid
            }
            return RelevanceScores(
                reason=str(data.get("reason", "")),
                scores=check_distribution(scores, "entity relevance"),
            )

        return self.ask(prompt, parse, "relevance scoring")

    def score_relations(
        self, question: str, subgoals: Sequence[str], relations: Dict[str, int]
    ) -> Dict[str, float]:
        if not relations:
            return {}
        listing = ", ".join(
            "{} ({})".format(rel, count) for rel, count in sorted(relations.items())
        )
        prompt = render_prompt(
            "relation_scoring",
            self.config.domain_label,
            {"query": question, "route": render_route(subgoals), "relations": listing},
        )

        def parse(data):
            raw = data.get("relations") if isinstance(data, dict) else None
            if not isinstance(raw, dict):
                raise OracleFormatException("missing relations", str(data))
            scores = {
                rel: clamp_unit(value, "relevance of " + rel)
                for rel, value in raw.items()
                if rel in relations
            }
            return check_distribution(scores, "relation relevance")

        return self.ask(prompt, parse, "relation scoring")

    def align_score(self, candidate_rendering: str, kg_rendering: str) -> float:
        prompt = render_prompt(
            "entity_alignment",
            self.config.domain_label,
            {"candidate": candidate_rendering, "stored": kg_rendering},
        )

        def parse(data):
            if not isinstance(data, dict) or "score" not in data:
                raise OracleFormatException("missing score", str(data))
            return clamp_unit(data["score"], "alignment score")

        return self.ask(prompt, parse, "entity alignment")

    def extract_partial_kg(self, document: Document) -> PartialGraph:
        prompt = render_prompt(
            "fact_extraction",
            self.config.domain_label,
            {
                "title": document.title,
                "published": document.published_at.to_iso() or "unknown",
                "document": document.text,
            },
        )

        def parse(data):
            facts = data.get("facts") if isinstance(data, dict) else None
            if not isinstance(facts, list):
                raise OracleFormatException("missing facts list", str(data))
            records = [fact_from_dict(f, i) for i, f in enumerate(facts)]
            try:
                return partial_graph_from_facts(document, records)
            except ValidationException as ex:
                raise OracleFormatException(ex.msg, str(data))

        return self.ask(prompt, parse, "fact extraction")

    def judge_answer(
        self,
        question: str,
        query_time: Timestamp,
        route: Sequence[str],
        candidate_paths: List[CandidatePath],
    ) -> Judgement:
        if not candidate_paths:
            return Judgement(answered=False)
        listing = "\n".join(
            "{} (confidence {:.3f})".format(p.text, p.confidence) for p in candidate_paths
        )
        prompt = render_prompt(
            "answer_judging",
            self.config.domain_label,
            {
                "query": question,
                "query time": render_query_time(query_time),
                "route": render_route(route),
                "paths": listing,
            },
        )

        def parse(data):
            if not isinstance(data, dict) or "answered" not in data:
                raise OracleFormatException("missing answered flag", str(data))
            answered = data["answered"]
            if isinstance(answered, str):
                answered = answered.strip().lower() == "true"
            answer = str(data.get("answer") or "").strip()
            return Judgement(answered=bool(answered) and bool(answer), answer=answer)

        return self.ask(prompt, parse, "answer judging")
