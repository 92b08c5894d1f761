from dataclasses import dataclass, field, replace
from typing import Any, Dict, List, Tuple

from .exceptions import ValidationException, ASSERT_POSITIVE
from .interval import TemporalInterval


@dataclass(frozen=True)
class SubgoalEstimate:
    """Traversal complexity inputs of one subgoal: branching, fanout, hops."""

    b: int = 1
    n: int = 1
    h: int = 1

    def __post_init__(self):
        ASSERT_POSITIVE(self.b, "branching b")
        ASSERT_POSITIVE(self.n, "fanout n")
        ASSERT_POSITIVE(self.h, "hops h")

    @property
    def psi(self) -> int:
        return (self.b * self.n) ** self.h


@dataclass(frozen=True)
class PathHop:
    relation: str
    relation_score: float
    target: str
    triplet_score: float
    interval: TemporalInterval = field(default_factory=TemporalInterval.always)
    edge_id: str = ""
    text: str = ""
    """The verbalised triplet the score was computed on"""


@dataclass(frozen=True)
class ReasoningPath:
    anchor: str
    anchor_score: float
    hops: Tuple[PathHop, ...] = ()
    confidence: float = 0.0

    @property
    def terminal(self) -> str:
        return self.hops[-1].target if self.hops else self.anchor

    @property
    def length(self) -> int:
        return len(self.hops)

    @property
    def entities(self) -> Tuple[str, ...]:
        return (self.anchor,) + tuple(h.target for h in self.hops)

    @property
    def key(self) -> Tuple[str, ...]:
        """Identity of the path: anchor plus the traversed edge ids."""
        return (self.anchor,) + tuple(h.edge_id for h in self.hops)

    def extend(self, hop: PathHop) -> "ReasoningPath":
        return replace(self, hops=self.hops + (hop,), confidence=0.0)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "anchor": self.anchor,
            "anchor_score": self.anchor_score,
            "confidence": self.confidence,
            "hops": [
                {
                    "relation": h.relation,
                    "relation_score": h.relation_score,
                    "target": h.target,
                    "triplet_score": h.triplet_score,
                    "interval": h.interval.to_dict(),
                    "edge_id": h.edge_id,
                    "text": h.text,
                }
                for h in self.hops
            ],
        }


@dataclass(frozen=True)
class Answer:
    value: str
    confidence_mass: float
    supporting_paths: Tuple[ReasoningPath, ...] = ()
    route_votes: Dict[int, float] = field(default_factory=dict)
    """Mass of the winning answer per selected route position"""
    audit: Tuple[Dict[str, Any], ...] = ()

    def __post_init__(self):
        if self.confidence_mass < 0:
            raise ValidationException("confidence mass must be >= 0", self.confidence_mass)

    def __hash__(self):
        return hash((self.value, self.confidence_mass, self.supporting_paths))

    def summary(self) -> Dict[str, Any]:
        return {
            "answer": self.value,
            "confidence_mass": self.confidence_mass,
            "route_votes": {str(k): v for k, v in sorted(self.route_votes.items())},
        }


@dataclass(frozen=True)
class RouteTrace:
    """Everything one route's exploration produced."""

    paths: Tuple[ReasoningPath, ...]
    answered: bool
    judged_answer: str
    depth: int
    vote_pool: Tuple[ReasoningPath, ...]
    """Paths this route contributes to answer voting"""
    records: Tuple[Dict[str, Any], ...] = ()

    def __hash__(self):
        return hash((self.paths, self.answered, self.judged_answer, self.depth))
