from collections import Counter
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, List, Optional

from .exceptions import ValidationException, ASSERT_NON_EMPTY
from .interval import TemporalInterval
from .property_map import PropertyMap
from .timestamp import Timestamp, UNKNOWN


class MergeKind(Enum):
    Insert = 1
    Skip = 2
    Merge = 3
    MapMerge = 4
    MapInsert = 5

    @property
    def rule(self) -> int:
        """Number of the edge update rule that produces this outcome."""
        return self.value


@dataclass(frozen=True)
class MergeAction:
    kind: MergeKind
    mapped_relation: Optional[str] = None
    reason: str = ""

    def __post_init__(self):
        mapped = self.kind in (MergeKind.MapMerge, MergeKind.MapInsert)
        if mapped != (self.mapped_relation is not None):
            raise ValidationException(
                "mapped_relation must be given exactly for MapMerge/MapInsert",
                (self.kind.name, self.mapped_relation),
            )


@dataclass(frozen=True)
class AlignmentResult:
    """Outcome of aligning an extracted entity: a target id or a new node."""

    target_id: Optional[str]
    score: float = 0.0

    @property
    def aligned(self) -> bool:
        return self.target_id is not None


@dataclass(frozen=True)
class SynonymMatch:
    relation: Optional[str]
    score: float = 0.0
    exclusive: bool = False

    @property
    def matched(self) -> bool:
        return self.relation is not None


@dataclass
class MergeReport:
    """
    Tallies of one or more evolution batches. Every count is derived from the
    audit records, so the two can never disagree.
    """

    records: List[Dict[str, Any]] = field(default_factory=list)
    failures: List[Dict[str, Any]] = field(default_factory=list)

    def record(self, stage: str, **fields: Any):
        entry = {"stage": stage}
        entry.update(fields)
        self.records.append(entry)

    def extend(self, other: "MergeReport"):
        self.records.extend(other.records)
        self.failures.extend(other.failures)

    def _count(self, stage: str, key: str = None, value: Any = None) -> int:
        return sum(
            1
            for r in self.records
            if r["stage"] == stage and (key is None or r.get(key) == value)
        )

    @property
    def entities_inserted(self) -> int:
        return self._count("entity", "outcome", "inserted")

    @property
    def entities_aligned(self) -> int:
        return self._count("entity", "outcome", "aligned")

    @property
    def edges_by_kind(self) -> Dict[str, int]:
        counts = Counter(r["action"] for r in self.records if r["stage"] == "edge")
        return {kind.name: counts.get(kind.name, 0) for kind in MergeKind}

    @property
    def property_conflicts_recorded(self) -> int:
        return sum(
            r.get("conflicts", 0) for r in self.records if r["stage"] in ("entity", "edge")
        )

    def summary(self) -> Dict[str, Any]:
        return {
            "entities_inserted": self.entities_inserted,
            "entities_aligned": self.entities_aligned,
            "edges": self.edges_by_kind,
            "property_conflicts_recorded": self.property_conflicts_recorded,
            "documents_failed": len(self.failures),
        }

    @property
    def empty(self) -> bool:
        summary = self.summary()
        return (
            not summary["entities_inserted"]
            and not summary["entities_aligned"]
            and not any(summary["edges"].values())
            and not summary["property_conflicts_recorded"]
        )


@dataclass(frozen=True)
class Observation:
    """One extracted value of an exclusive relation slot."""

    value: str
    context: str
    observed_at: Timestamp = field(default=UNKNOWN)
    source_weight: float = 1.0

    def __post_init__(self):
        ASSERT_NON_EMPTY(self.value, "observed value")
        if not (0.0 < self.source_weight <= 1.0):
            raise ValidationException(
                "observation source_weight must lie in (0, 1]", self.source_weight
            )


@dataclass(frozen=True)
class ResolvedEdge:
    """A candidate edge whose endpoints were aligned to stored entity ids."""

    source: str
    relation: str
    target: str
    interval: TemporalInterval = field(default_factory=TemporalInterval.always)
    properties: PropertyMap = field(default_factory=PropertyMap)
