"""
Tempograph (c) 2026 The Tempograph Authors

SPDX-License-Identifier: MIT

Logging setup for the command line. Library code only ever calls
``logging.getLogger(__name__)``; this module decides how records look.
"""

import logging
import sys
from typing import Optional, TextIO

from .colors import FMT_NONE, FMT_ERROR, SUBSYSTEM_FORMATS

LEVELS = [logging.WARNING, logging.INFO, logging.DEBUG]


class SubsystemFormatter(logging.Formatter):
    """
    Formats records as ``[ORACLE] message``, coloured per subsystem.
    """

    def __init__(self, color: bool = True):
        super().__init__()
        self.color = color

    def format(self, record: logging.LogRecord) -> str:
        parts = record.name.split(".")
        tag, fmt = SUBSYSTEM_FORMATS.get(
            parts[1] if len(parts) > 1 else "", ("TEMPOGRAPH", "")
        )
        if record.levelno >= logging.ERROR:
            fmt = FMT_ERROR
        text = "[{}] {}".format(tag, record.getMessage())
        if record.levelno >= logging.WARNING:
            text = "[{}] {}: {}".format(tag, record.levelname, record.getMessage())
        if record.exc_info:
            text += "\n" + self.formatException(record.exc_info)
        if self.color and fmt:
            return fmt + text + FMT_NONE
        return text


def setup_logging(verbosity: int = 0, stream: Optional[TextIO] = None) -> logging.Handler:
    """
    Route all ``tempograph.*`` loggers to stderr. ``verbosity`` is the number of
    ``-v`` flags given on the command line.
    """
    stream = stream if stream is not None else sys.stderr
    handler = logging.StreamHandler(stream)
    handler.setFormatter(
        SubsystemFormatter(color=hasattr(stream, "isatty") and stream.isatty())
    )
    root = logging.getLogger("tempograph")
    for existing in list(root.handlers):
        root.removeHandler(existing)
    root.addHandler(handler)
    root.setLevel(LEVELS[min(max(verbosity, 0), len(LEVELS) - 1)])
    root.propagate = False
    return handler
