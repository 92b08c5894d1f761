"""
Tempograph (c) 2026 The Tempograph Authors

SPDX-License-Identifier: MIT

Structured fact blocks embedded in documents. Every line starting with
``FACT|`` holds one typed triple:

    FACT|subject_type|subject|relation|object_type|object|start|end|exclusive

``start`` and ``end`` are ISO-8601 dates, ``?`` or empty for unknown;
``exclusive`` is ``true`` or ``false``. Other lines are ignored.
"""

from dataclasses import dataclass
from typing import Dict, Iterable, List, Optional

from ..types import (
    Document,
    CandidateEntity,
    CandidateEdge,
    PartialGraph,
    TemporalInterval,
    Timestamp,
)
from ..types.exceptions import OracleFormatException, ValidationException

FACT_PREFIX = "FACT|"
FACT_FIELDS = 8

TRUE_WORDS = ("true", "yes", "1")
FALSE_WORDS = ("false", "no", "0", "")


@dataclass(frozen=True)
class FactRecord:
    subject_type: str
    subject: str
    relation: str
    object_type: str
    object: str
    interval: TemporalInterval = TemporalInterval()
    exclusive: bool = False

    def to_line(self) -> str:
        return FACT_PREFIX + "|".join(
            (
                self.subject_type,
                self.subject,
                self.relation,
                self.object_type,
                self.object,
                _render_endpoint(self.interval.start),
                _render_endpoint(self.interval.end),
                "true" if self.exclusive else "false",
            )
        )


def _render_endpoint(ts: Timestamp) -> str:
    if not ts.known:
        return "?"
    return ts.render()


def parse_fact_line(line: str, line_no: int = 0) -> FactRecord:
    parts = [p.strip() for p in line.strip()[len(FACT_PREFIX) :].split("|")]
    if len(parts) != FACT_FIELDS:
        raise OracleFormatException(
            "line {}: expected {} fact fields, got {}".format(
                line_no, FACT_FIELDS, len(parts)
            ),
            line,
        )
    subject_type, subject, relation, object_type, obj, start, end, exclusive = parts
    if not subject or not relation or not obj:
        raise OracleFormatException(
            "line {}: subject, relation and object are required".format(line_no), line
        )
    if exclusive.lower() not in TRUE_WORDS + FALSE_WORDS:
        raise OracleFormatException(
            "line {}: exclusive flag must be true or false".format(line_no), line
        )
    try:
        interval = TemporalInterval.from_iso(start, end)
    except ValidationException as ex:
        raise OracleFormatException("line {}: {}".format(line_no, ex.msg), line)
    return FactRecord(
        subject_type=subject_type,
        subject=subject,
        relation=relation,
        object_type=object_type,
        object=obj,
        interval=interval,
        exclusive=exclusive.lower() in TRUE_WORDS,
    )


def parse_fact_block(text: str) -> List[FactRecord]:
    facts = []
    for line_no, line in enumerate(text.splitlines(), start=1):
        if line.strip().startswith(FACT_PREFIX):
            facts.append(parse_fact_line(line, line_no))
    return facts


def entity_key(type: str, name: str) -> str:
    return "{}:{}".format(type, name)


def partial_graph_from_facts(
    document: Document, facts: Iterable[FactRecord]
) -> PartialGraph:
    """
    Turn facts into candidate entities and edges. Subjects and the objects of
    non-exclusive facts become candidate entities (one per type and name);
    exclusive facts keep their object as a plain value.
    """
    entities: Dict[str, CandidateEntity] = dict()
    edges: List[CandidateEdge] = []

    def add_entity(type: str, name: str) -> str:
        key = entity_key(type, name)
        if key not in entities:
            entities[key] = CandidateEntity(key=key, type=type, name=name)
        return key

    for fact in facts:
        source_key = add_entity(fact.subject_type, fact.subject)
        target_key = ""
        if not fact.exclusive:
            target_key = add_entity(fact.object_type, fact.object)
        edges.append(
            CandidateEdge(
                source_key=source_key,
                relation=fact.relation,
                target_key=target_key,
                subject_type=fact.subject_type,
                object_type=fact.object_type,
                object_value=fact.object,
                interval=fact.interval,
                exclusive=fact.exclusive,
            )
        )
    return PartialGraph(
        document=document, entities=tuple(entities.values()), edges=tuple(edges)
    )


def fact_from_dict(data: Dict, index: int) -> FactRecord:
    """Build a fact from a JSON object as returned by the extraction prompt."""
    try:
        exclusive = data.get("exclusive", False)
        if isinstance(exclusive, str):
            exclusive = exclusive.lower() in TRUE_WORDS
        record = FactRecord(
            subject_type=str(data.get("subject_type") or ""),
            subject=str(data["subject"]).strip(),
            relation=str(data["relation"]).strip(),
            object_type=str(data.get("object_type") or ""),
            object=str(data["object"]).strip(),
            interval=TemporalInterval.from_iso(
                _optional_str(data.get("start")), _optional_str(data.get("end"))
            ),
            exclusive=bool(exclusive),
        )
    except (KeyError, TypeError, AttributeError) as ex:
        raise OracleFormatException("fact {} is malformed: {}".format(index, ex))
    except ValidationException as ex:
        raise OracleFormatException("fact {}: {}".format(index, ex.msg))
    if not record.subject or not record.relation or not record.object:
        raise OracleFormatException("fact {} misses subject, relation or object".format(index))
    return record


def _optional_str(value) -> Optional[str]:
    return None if value is None else str(value)
