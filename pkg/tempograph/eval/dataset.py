"""
Tempograph (c) 2026 The Tempograph Authors

SPDX-License-Identifier: MIT
"""

from typing import IO, Iterable, List, Union

from ..helpers import read_jsonl, dump_json_line
from ..types import QAItem
from ..types.exceptions import DatasetException, ValidationException


def parse_dataset(lines: Iterable[str]) -> List[QAItem]:
    """
    Validate QA records in order. Errors name the zero based index of the
    offending record.
    """
    items: List[QAItem] = []
    seen = set()
    try:
        for index, (line_no, record) in enumerate(read_jsonl(lines)):
            if not isinstance(record, dict):
                raise DatasetException("record is not a JSON object", index, record)
            if isinstance(record.get("gold_answers"), str):
                raise DatasetException("gold_answers must be a list", index)
            try:
                item = QAItem.from_dict(record)
            except KeyError as ex:
                raise DatasetException(
                    "missing field {} (line {})".format(ex, line_no), index
                )
            except (TypeError, ValueError) as ex:
                raise DatasetException(
                    "malformed record (line {}): {}".format(line_no, ex), index
                )
            except ValidationException as ex:
                raise DatasetException(ex.msg, index, ex.data)
            if item.id in seen:
                raise DatasetException("duplicate item id", index, item.id)
            seen.add(item.id)
            items.append(item)
    except ValueError as ex:
        raise DatasetException(ex.args[0], len(items), "line {}".format(ex.args[1]))
    return items


def load_dataset(source: Union[str, IO[str]]) -> List[QAItem]:
    if isinstance(source, str):
        with open(source, "r", encoding="utf-8") as f:
            return parse_dataset(f)
    return parse_dataset(source)


def dataset_lines(items: Iterable[QAItem]) -> List[str]:
    return [dump_json_line(item.to_dict()) for item in items]
