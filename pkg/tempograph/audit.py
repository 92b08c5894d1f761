"""
Tempograph (c) 2026 The Tempograph Authors

SPDX-License-Identifier: MIT

JSONL audit trails. Every log starts with a header echoing the effective
configuration, followed by one record per decision.
"""

from typing import Any, Dict, IO, Iterable, List, Union

from .config import TempographConfig
from .helpers import dump_json_line

AUDIT_FORMAT_VERSION = 1


def audit_lines(
    kind: str, config: TempographConfig, records: Iterable[Dict[str, Any]]
) -> List[str]:
    lines = [
        dump_json_line(
            {
                "kind": "header",
                "audit": kind,
                "format_version": AUDIT_FORMAT_VERSION,
                "config": config.to_dict(),
            }
        )
    ]
    lines.extend(dump_json_line(dict(record)) for record in records)
    return lines


def write_audit(
    destination: Union[str, IO[str]],
    kind: str,
    config: TempographConfig,
    records: Iterable[Dict[str, Any]],
):
    text = "\n".join(audit_lines(kind, config, records)) + "\n"
    if isinstance(destination, str):
        with open(destination, "w", encoding="utf-8", newline="\n") as f:
            f.write(text)
    else:
        destination.write(text)
