"""
Tempograph (c) 2026 The Tempograph Authors

SPDX-License-Identifier: MIT
"""

from abc import abstractmethod
from typing import Any, Optional

from ..colors import *


class TempographBaseException(Exception):
    exit_code: int = 1

    @abstractmethod
    def message(self) -> str:
        raise NotImplementedError

    def plain_message(self) -> str:
        """The message without any terminal formatting."""
        text = self.message()
        for fmt in (FMT_NONE, FMT_BOLD, FMT_UNDERLINE):
            text = text.replace(fmt, "")
        for code in (
            FMT_RED,
            FMT_ORANGE,
            FMT_GRAY,
            FMT_CYAN,
            FMT_GREEN,
            FMT_MAGENTA,
            FMT_BLUE,
            FMT_YELLOW,
        ):
            text = text.replace(code, "")
        return text

    def print_stacktrace(self):
        import traceback

        traceback.print_exception(type(self), self, self.__traceback__)

    def __str__(self):
        return self.plain_message()


# Validation exceptions:


class ValidationException(TempographBaseException):
    def __init__(self, msg: str, data: Any = None):
        super().__init__(msg, data)
        self.msg = msg
        self.data = data

    def message(self):
        return (
            FMT_PARSE
            + '{}("{}", data={})'.format(self.__class__.__name__, self.msg, self.data)
            + FMT_NONE
        )


def ASSERT_NON_EMPTY(value: str, what: str):
    if not isinstance(value, str) or not value.strip():
        raise ValidationException("{} must be a non-empty string".format(what), value)


def ASSERT_IN_RANGE(value: float, low: float, high: float, what: str):
    if not (low <= value <= high):
        raise ValidationException(
            "{} must lie in [{}, {}]".format(what, low, high), value
        )


def ASSERT_POSITIVE(value: int, what: str):
    if value < 1:
        raise ValidationException("{} must be >= 1".format(what), value)


def ASSERT_LEN(a1, size, what: str = "sequence"):
    if len(a1) != size:
        raise ValidationException(
            "ASSERTION_FAILED: Expected {} to be of length {}".format(what, size),
            (len(a1), size),
        )


class ReferentialException(ValidationException):
    """An entity id that should resolve to a stored entity does not."""

    def __init__(self, msg: str, entity_id: str):
        super().__init__(msg, entity_id)
        self.entity_id = entity_id

    def message(self):
        return (
            FMT_GRAPH
            + "{}({}: {})".format(self.__class__.__name__, self.msg, self.entity_id)
            + FMT_NONE
        )


class IntervalException(ValidationException):
    def message(self):
        return (
            FMT_GRAPH
            + "{}({}, interval={})".format(self.__class__.__name__, self.msg, self.data)
            + FMT_NONE
        )


class TimestampComparisonException(ValidationException):
    """Raised when an unknown timestamp takes part in an ordering comparison."""

    def message(self):
        return (
            FMT_GRAPH
            + "{}(cannot order {})".format(self.__class__.__name__, self.data)
            + FMT_NONE
        )


class PreconditionException(ValidationException):
    pass


class ConfigException(ValidationException):
    def __init__(self, msg: str, section: str, field: Optional[str] = None):
        super().__init__(msg, (section, field))
        self.section = section
        self.field = field

    def message(self):
        where = self.section if self.field is None else self.section + "." + self.field
        return FMT_ERROR + "{}({}: {})".format(
            self.__class__.__name__, where, self.msg
        ) + FMT_NONE


class SnapshotFormatException(ValidationException):
    def __init__(self, msg: str, line: int, data: Any = None):
        super().__init__(msg, data)
        self.line = line

    def message(self):
        return (
            FMT_PARSE
            + "{}(line {}: {}{})".format(
                self.__class__.__name__,
                self.line,
                self.msg,
                ", data={}".format(self.data) if self.data is not None else "",
            )
            + FMT_NONE
        )


class DatasetException(ValidationException):
    def __init__(self, msg: str, index: int, data: Any = None):
        super().__init__(msg, data)
        self.index = index

    def message(self):
        return (
            FMT_EVAL
            + "{}(record {}: {})".format(self.__class__.__name__, self.index, self.msg)
            + FMT_NONE
        )


class WorldSpecException(ValidationException):
    pass


# Oracle exceptions


class OracleFormatException(TempographBaseException):
    exit_code = 2

    def __init__(self, msg: str, response: Optional[str] = None, attempts: int = 1):
        super().__init__(msg)
        self.msg = msg
        self.response = response
        self.attempts = attempts

    def message(self):
        return (
            FMT_ORACLE
            + "{}({} after {} attempt(s))".format(
                self.__class__.__name__, self.msg, self.attempts
            )
            + FMT_NONE
        )


class TransportException(TempographBaseException):
    exit_code = 2

    def __init__(self, msg: str, endpoint: str = ""):
        super().__init__(msg)
        self.msg = msg
        self.endpoint = endpoint

    def message(self):
        return (
            FMT_ORACLE
            + "{}({} at {})".format(self.__class__.__name__, self.msg, self.endpoint)
            + FMT_NONE
        )


class OracleBudgetException(TempographBaseException):
    exit_code = 2

    def __init__(self, budget: int):
        super().__init__(budget)
        self.budget = budget

    def message(self):
        return (
            FMT_ORACLE
            + "{}(per-question budget of {} oracle calls exhausted)".format(
                self.__class__.__name__, self.budget
            )
            + FMT_NONE
        )


# Reasoning exceptions


class NoAnswerException(TempographBaseException):
    exit_code = 3

    def __init__(self, msg: str, question: str = ""):
        super().__init__(msg)
        self.msg = msg
        self.question = question

    def message(self):
        return (
            FMT_REASON
            + '{}({} for "{}")'.format(self.__class__.__name__, self.msg, self.question)
            + FMT_NONE
        )
