from datetime import datetime, timezone
from typing import Optional, Union

from .exceptions import TimestampComparisonException, ValidationException


class Timestamp:
    """
    A point in time as signed integer seconds since the Unix epoch (UTC), or
    the distinguished unknown marker.

    Unknown compares equal only to unknown. Ordering comparisons involving an
    unknown timestamp raise a :class:`TimestampComparisonException` instead of
    silently picking an order.
    """

    __slots__ = ("_val",)

    def __init__(self, val: Union[int, "Timestamp", None] = None):
        if isinstance(val, Timestamp):
            self._val = val._val
        elif val is None:
            self._val = None
        elif isinstance(val, bool) or not isinstance(val, int):
            raise ValidationException(
                "Timestamp values must be integers", (type(val).__name__, val)
            )
        else:
            self._val = val

    @classmethod
    def unknown(cls) -> "Timestamp":
        return UNKNOWN

    @classmethod
    def from_iso(cls, text: Optional[str]) -> "Timestamp":
        """
        Parse an ISO-8601 date or datetime (a bare four digit year is accepted
        and means January 1st). ``None``, ``""``, ``"?"`` and ``"unknown"``
        parse to the unknown marker. Naive datetimes are read as UTC.
        """
        if text is None:
            return UNKNOWN
        text = text.strip()
        if text.lower() in ("", "?", "unknown", "none", "null"):
            return UNKNOWN
        try:
            if len(text) == 4 and text.isdigit():
                moment = datetime(int(text), 1, 1, tzinfo=timezone.utc)
            else:
                moment = datetime.fromisoformat(text.replace("Z", "+00:00"))
        except ValueError as ex:
            raise ValidationException(
                'Invalid ISO-8601 timestamp "{}"'.format(text), ex
            )
        if moment.tzinfo is None:
            moment = moment.replace(tzinfo=timezone.utc)
        return cls(int(moment.timestamp()))

    @property
    def known(self) -> bool:
        return self._val is not None

    @property
    def value(self) -> int:
        if self._val is None:
            raise TimestampComparisonException("unknown timestamp has no value", self)
        return self._val

    def to_iso(self) -> Optional[str]:
        """ISO-8601 with a ``Z`` suffix, or ``None`` for unknown."""
        if self._val is None:
            return None
        return (
            datetime.fromtimestamp(self._val, tz=timezone.utc)
            .isoformat()
            .replace("+00:00", "Z")
        )

    def render(self) -> str:
        """
        Human readable form used in verbalised triplets: the plain date when the
        time of day is midnight, otherwise the full ISO form.
        """
        if self._val is None:
            return "unknown time"
        moment = datetime.fromtimestamp(self._val, tz=timezone.utc)
        if moment.hour == moment.minute == moment.second == 0:
            return moment.date().isoformat()
        return self.to_iso()

    def _other_value(self, other: object) -> int:
        if isinstance(other, Timestamp):
            other_val = other._val
        elif isinstance(other, int) and not isinstance(other, bool):
            other_val = other
        else:
            raise TimestampComparisonException("incomparable types", (self, other))
        if self._val is None or other_val is None:
            raise TimestampComparisonException("unknown timestamp", (self, other))
        return other_val

    def __eq__(self, other: object) -> bool:
        if isinstance(other, Timestamp):
            return self._val == other._val
        if isinstance(other, int) and not isinstance(other, bool):
            return self._val == other
        return False

    def __lt__(self, other: Union["Timestamp", int]) -> bool:
        return self.value < self._other_value(other)

    def __le__(self, other: Union["Timestamp", int]) -> bool:
        return self.value <= self._other_value(other)

    def __gt__(self, other: Union["Timestamp", int]) -> bool:
        return self.value > self._other_value(other)

    def __ge__(self, other: Union["Timestamp", int]) -> bool:
        return self.value >= self._other_value(other)

    def __sub__(self, other: Union["Timestamp", int]) -> int:
        return self.value - self._other_value(other)

    def __hash__(self):
        return hash(("Timestamp", self._val))

    def __repr__(self):
        if self._val is None:
            return "Timestamp(unknown)"
        return "Timestamp({})".format(self.to_iso())

    def __str__(self):
        return self.to_iso() or "unknown"


UNKNOWN = Timestamp(None)
