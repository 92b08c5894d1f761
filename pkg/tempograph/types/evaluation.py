import math
from dataclasses import dataclass, field
from typing import Any, Dict, List, Mapping, Tuple

from .exceptions import ValidationException, ASSERT_NON_EMPTY
from .timestamp import Timestamp, UNKNOWN


@dataclass(frozen=True)
class QAItem:
    id: str
    question: str
    gold_answers: Tuple[str, ...]
    query_time: Timestamp = field(default=UNKNOWN)
    domain: str = ""

    def __post_init__(self):
        ASSERT_NON_EMPTY(self.id, "QA item id")
        ASSERT_NON_EMPTY(self.question, "QA question")
        object.__setattr__(self, "gold_answers", tuple(self.gold_answers))
        if not self.gold_answers:
            raise ValidationException("QA items need at least one gold answer", self.id)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "id": self.id,
            "question": self.question,
            "query_time": self.query_time.to_iso(),
            "gold_answers": list(self.gold_answers),
            "domain": self.domain,
        }

    @classmethod
    def from_dict(cls, data: Mapping[str, Any]) -> "QAItem":
        return cls(
            id=str(data["id"]),
            question=data["question"],
            gold_answers=tuple(data["gold_answers"]),
            query_time=Timestamp.from_iso(data.get("query_time")),
            domain=data.get("domain", ""),
        )


@dataclass(frozen=True)
class Verdict:
    item_id: str
    run: int
    predicted: str
    correct: bool
    grounded: bool = True
    error: str = ""

    def to_dict(self) -> Dict[str, Any]:
        return {
            "kind": "verdict",
            "item_id": self.item_id,
            "run": self.run,
            "predicted": self.predicted,
            "correct": self.correct,
            "grounded": self.grounded,
            "error": self.error,
        }


def population_mean_std(values: List[float]) -> Tuple[float, float]:
    if not values:
        return 0.0, 0.0
    mean = math.fsum(values) / len(values)
    var = math.fsum((v - mean) ** 2 for v in values) / len(values)
    return mean, math.sqrt(var)


@dataclass(frozen=True)
class EvalReport:
    """
    Accuracy per run with population mean and standard deviation (the ``±``
    convention of result tables).
    """

    per_run_accuracy: Tuple[float, ...]
    mean: float
    std: float
    verdicts: Tuple[Verdict, ...] = ()

    @property
    def runs(self) -> int:
        return len(self.per_run_accuracy)

    @classmethod
    def from_runs(cls, per_run_accuracy: List[float], verdicts: List[Verdict]):
        mean, std = population_mean_std(per_run_accuracy)
        return cls(tuple(per_run_accuracy), mean, std, tuple(verdicts))

    def summary(self) -> Dict[str, Any]:
        return {
            "kind": "summary",
            "std_convention": "population",
            "runs": self.runs,
            "per_run_accuracy": list(self.per_run_accuracy),
            "mean": self.mean,
            "std": self.std,
        }

    def accuracy_on(self, item_ids) -> float:
        """Mean accuracy restricted to a subset of items, over all runs."""
        wanted = set(item_ids)
        chosen = [v for v in self.verdicts if v.item_id in wanted]
        if not chosen:
            return 0.0
        return sum(1 for v in chosen if v.correct) / len(chosen)


@dataclass(frozen=True)
class ComparisonReport:
    before: EvalReport
    after: EvalReport

    @property
    def delta(self) -> float:
        return self.after.mean - self.before.mean

    def summary(self) -> Dict[str, Any]:
        return {
            "kind": "comparison",
            "before": self.before.summary(),
            "after": self.after.summary(),
            "delta": self.delta,
        }
