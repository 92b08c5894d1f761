from dataclasses import dataclass, field
from typing import Dict, List, Tuple

from .exceptions import ValidationException, ASSERT_IN_RANGE


@dataclass(frozen=True)
class RoutePlan:
    reason: str
    routes: Tuple[Tuple[str, ...], ...]

    def __post_init__(self):
        routes = tuple(tuple(r) for r in self.routes)
        object.__setattr__(self, "routes", routes)
        if not routes:
            raise ValidationException("a route plan needs at least one route")
        for route in routes:
            if not route:
                raise ValidationException("routes must not be empty", routes)


@dataclass(frozen=True)
class MentionAnalysis:
    mentions: Tuple[str, ...] = ()
    temporal_contexts: Tuple[str, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "mentions", tuple(self.mentions))
        object.__setattr__(self, "temporal_contexts", tuple(self.temporal_contexts))
        if len(self.mentions) != len(self.temporal_contexts):
            raise ValidationException(
                "mentions and temporal contexts must be aligned",
                (self.mentions, self.temporal_contexts),
            )

    def __len__(self):
        return len(self.mentions)

    def pairs(self) -> List[Tuple[str, str]]:
        return list(zip(self.mentions, self.temporal_contexts))


@dataclass(frozen=True)
class RelevanceScores:
    reason: str
    scores: Dict[str, float] = field(default_factory=dict)

    def __post_init__(self):
        for key, score in self.scores.items():
            ASSERT_IN_RANGE(score, 0.0, 1.0, "relevance score of " + key)

    def __hash__(self):
        return hash((self.reason, tuple(sorted(self.scores.items()))))


@dataclass(frozen=True)
class Judgement:
    answered: bool
    answer: str = ""


@dataclass(frozen=True)
class CandidatePath:
    """A reasoning path as shown to the answer judge."""

    text: str
    """The verbalised hops, or the anchor name for a path without hops"""
    terminal_name: str
    terminal_type: str
    confidence: float = 0.0
    hops: int = 0
