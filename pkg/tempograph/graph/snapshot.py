"""
Tempograph (c) 2026 The Tempograph Authors

SPDX-License-Identifier: MIT

JSONL snapshots of a GraphStore. The first record is a header carrying the
format version and the store revision, followed by every schema, entity and
edge, each group sorted by key, so that equal stores produce equal bytes.
"""

import logging
from typing import IO, Any, Dict, Iterable, List, Tuple, Union

from ..helpers import dump_json_line, read_jsonl
from ..types import Entity, Edge, RelationSchema
from ..types.exceptions import SnapshotFormatException, ValidationException
from .store import GraphStore

logger = logging.getLogger(__name__)

FORMAT_VERSION = 1

RECORD_KINDS = ("schema", "entity", "edge")


def snapshot_lines(store: GraphStore) -> List[str]:
    lines = [
        dump_json_line(
            {"kind": "header", "format_version": FORMAT_VERSION, "revision": store.revision}
        )
    ]
    for schema in store.schemas:
        lines.append(dump_json_line(dict(kind="schema", **schema.to_dict())))
    for entity_id in store.entity_ids():
        record = store.get_entity(entity_id).to_dict()
        lines.append(dump_json_line(dict(kind="entity", **record)))
    for edge_id in sorted(store.edges):
        record = store.get_edge(edge_id).to_dict()
        lines.append(dump_json_line(dict(kind="edge", **record)))
    return lines


def snapshot_save(store: GraphStore, destination: Union[str, IO[str]]):
    """Write the store to a path or an open text stream."""
    text = "\n".join(snapshot_lines(store)) + "\n"
    if isinstance(destination, str):
        with open(destination, "w", encoding="utf-8", newline="\n") as f:
            f.write(text)
    else:
        destination.write(text)
    logger.info(
        "Saved snapshot with %d entities, %d edges (revision %d)",
        len(store.entities),
        len(store.edges),
        store.revision,
    )


def snapshot_load(source: Union[str, IO[str], Iterable[str]]) -> GraphStore:
    """
    Read a snapshot written by :func:`snapshot_save`. Any problem is reported
    as a :class:`SnapshotFormatException` carrying the offending line number.
    """
    if isinstance(source, str):
        try:
            with open(source, "r", encoding="utf-8") as f:
                return _load_lines(f)
        except OSError as ex:
            raise SnapshotFormatException("cannot read snapshot: {}".format(ex), 0)
    return _load_lines(source)


def _load_lines(lines: Iterable[str]) -> GraphStore:
    records: Dict[str, List[Tuple[int, Dict[str, Any]]]] = {k: [] for k in RECORD_KINDS}
    header = None
    try:
        for line_no, record in read_jsonl(lines):
            if not isinstance(record, dict) or "kind" not in record:
                raise SnapshotFormatException("record without a kind", line_no, record)
            kind = record.pop("kind")
            if kind == "header":
                if header is not None:
                    raise SnapshotFormatException("second header record", line_no)
                header = (line_no, record)
            elif kind in records:
                if header is None:
                    raise SnapshotFormatException(
                        "{} record before the header".format(kind), line_no
                    )
                records[kind].append((line_no, record))
            else:
                raise SnapshotFormatException("unknown record kind", line_no, kind)
    except ValueError as ex:
        raise SnapshotFormatException(ex.args[0], ex.args[1])

    if header is None:
        raise SnapshotFormatException("missing header record", 1)
    line_no, head = header
    if head.get("format_version") != FORMAT_VERSION:
        raise SnapshotFormatException(
            "unsupported format version", line_no, head.get("format_version")
        )
    revision = head.get("revision")
    if not isinstance(revision, int) or isinstance(revision, bool) or revision < 0:
        raise SnapshotFormatException("invalid revision", line_no, revision)

    store = GraphStore()
    with store.batch():
        for line_no, record in records["schema"]:
            with _at_line(line_no):
                store.register_schema(RelationSchema.from_dict(record))
        for line_no, record in records["entity"]:
            with _at_line(line_no):
                entity = Entity.from_dict(record)
                if store.has_entity(entity.id):
                    raise SnapshotFormatException(
                        "duplicate entity id {}".format(entity.id), line_no, entity.id
                    )
                store.upsert_entity(entity)
        for line_no, record in records["edge"]:
            with _at_line(line_no):
                edge = Edge.from_dict(record)
                if store.has_edge(edge.id):
                    raise SnapshotFormatException(
                        "duplicate edge id {}".format(edge.id), line_no, edge.id
                    )
                stored_id = store.insert_edge(edge)
                if stored_id != edge.id:
                    raise SnapshotFormatException(
                        "edge {} repeats edge {}".format(edge.id, stored_id),
                        line_no,
                        edge.id,
                    )
    store.revision = revision
    return store


class _at_line:
    """Re-raise record level errors as snapshot format errors at ``line``."""

    def __init__(self, line: int):
        self.line = line

    def __enter__(self):
        return self

    def __exit__(self, exc_type, exc, tb):
        if exc is None or isinstance(exc, SnapshotFormatException):
            return False
        if isinstance(exc, ValidationException):
            raise SnapshotFormatException(exc.msg, self.line, exc.data) from exc
        if isinstance(exc, (KeyError, TypeError, ValueError, AttributeError)):
            raise SnapshotFormatException(
                "malformed record: {}".format(exc), self.line
            ) from exc
        return False
