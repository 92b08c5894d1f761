"""
Tempograph (c) 2026 The Tempograph Authors

SPDX-License-Identifier: MIT
"""

import hashlib
import json
import re
from typing import Any, Dict, Iterable, Iterator, List, Tuple

TOKEN_PATTERN = re.compile(r"[0-9a-z]+")
WHITESPACE_PATTERN = re.compile(r"\s+")
LEADING_ARTICLES = ("the ", "a ", "an ")


def tokenize(text: str) -> List[str]:
    """
    Lowercase and split on every non-alphanumeric character.
    """
    return TOKEN_PATTERN.findall(text.lower())


def normalize_answer(text: str) -> str:
    """
    Canonical answer form: lowercase, trimmed, whitespace collapsed and a
    leading article stripped. Shared by answer voting and evaluation.
    """
    text = WHITESPACE_PATTERN.sub(" ", text.strip().lower())
    for article in LEADING_ARTICLES:
        if text.startswith(article):
            text = text[len(article) :].lstrip()
            break
    return text


def stable_hash(*parts: str, digest_size: int = 8) -> str:
    """
    Hex digest of blake2b over the NUL-joined parts. Stable across processes,
    unlike the builtin ``hash``.
    """
    digest = hashlib.blake2b(
        "\0".join(parts).encode("utf-8"), digest_size=digest_size
    )
    return digest.hexdigest()


def dump_json_line(record: Dict[str, Any]) -> str:
    """Byte-stable single line JSON (sorted keys, no extra whitespace)."""
    return json.dumps(record, sort_keys=True, separators=(",", ":"), ensure_ascii=False)


def read_jsonl(lines: Iterable[str]) -> Iterator[Tuple[int, Any]]:
    """
    Yield ``(line_number, parsed)`` for every non-blank line. Parse errors are
    re-raised as ``ValueError`` carrying the line number in ``args[1]``.
    """
    for number, line in enumerate(lines, start=1):
        if not line.strip():
            continue
        try:
            yield number, json.loads(line)
        except json.JSONDecodeError as ex:
            raise ValueError("invalid JSON: {}".format(ex.msg), number)


def format_table(header: List[str], rows: List[List[str]]) -> str:
    """Render a plain text table with left aligned, padded columns."""
    widths = [len(h) for h in header]
    for row in rows:
        for i, cell in enumerate(row):
            widths[i] = max(widths[i], len(cell))
    lines = [
        "  ".join(h.ljust(w) for h, w in zip(header, widths)).rstrip(),
        "  ".join("-" * w for w in widths),
    ]
    for row in rows:
        lines.append("  ".join(c.ljust(w) for c, w in zip(row, widths)).rstrip())
    return "\n".join(lines)
