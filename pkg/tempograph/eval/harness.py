"""
Tempograph (c) 2026 The Tempograph Authors

SPDX-License-Identifier: MIT

Accuracy of the reasoner on a QA dataset, over repeated runs.
"""

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import replace
from typing import Callable, List, Optional, Sequence

from ..config import OracleConfig, TempographConfig
from ..embed import Encoder, EmbeddingIndex, create_encoder
from ..graph import GraphStore
from ..helpers import dump_json_line, format_table, normalize_answer
from ..oracle import Oracle, create_oracle
from ..reason import Reasoner
from ..types import ComparisonReport, EvalReport, QAItem, Verdict
from ..types.exceptions import (
    NoAnswerException,
    OracleBudgetException,
    ValidationException,
)

logger = logging.getLogger(__name__)

T_OracleFactory = Callable[[OracleConfig, Encoder], Oracle]


def is_correct(predicted: str, gold_answers: Sequence[str]) -> bool:
    """Exact match of the normalised prediction against any gold alias."""
    wanted = normalize_answer(predicted)
    return any(wanted == normalize_answer(gold) for gold in gold_answers)


def evaluate_item(reasoner: Reasoner, item: QAItem, run: int) -> Verdict:
    try:
        answer = reasoner.answer(item.question, item.query_time)
    except (NoAnswerException, OracleBudgetException) as ex:
        logger.info("No answer for %s (run %d): %s", item.id, run, ex)
        return Verdict(item.id, run, "", False, grounded=False, error=type(ex).__name__)
    return Verdict(
        item.id,
        run,
        answer.value,
        is_correct(answer.value, item.gold_answers),
    )


def run_eval(
    dataset: Sequence[QAItem],
    store: GraphStore,
    config: TempographConfig = None,
    runs: Optional[int] = None,
    seed: Optional[int] = None,
    jobs: Optional[int] = None,
    encoder: Optional[Encoder] = None,
    oracle_factory: T_OracleFactory = create_oracle,
) -> EvalReport:
    """
    Answer every item once per run. Run ``r`` uses the oracle seed offset by
    ``seed + r``. Unanswered items count as incorrect. Verdicts are ordered by
    run, then item id, whatever the number of ``jobs``.
    """
    config = config if config is not None else TempographConfig()
    runs = runs if runs is not None else config.eval.runs
    seed = seed if seed is not None else config.eval.seed
    jobs = jobs if jobs is not None else config.eval.jobs
    if not dataset:
        raise ValidationException("cannot evaluate an empty dataset")
    if runs < 1:
        raise ValidationException("runs must be >= 1", runs)

    encoder = encoder if encoder is not None else create_encoder(config.oracle)
    index = EmbeddingIndex.for_entities(store, encoder)
    items = sorted(dataset, key=lambda item: item.id)

    per_run: List[float] = []
    verdicts: List[Verdict] = []
    for run in range(runs):
        oracle_config = replace(config.oracle, seed=config.oracle.seed + seed + run)
        reasoner = Reasoner(
            store,
            oracle_factory(oracle_config, encoder),
            encoder,
            config.reasoner,
            index,
        )
        if jobs > 1:
            with ThreadPoolExecutor(max_workers=jobs) as pool:
                run_verdicts = list(
                    pool.map(lambda item: evaluate_item(reasoner, item, run), items)
                )
        else:
            run_verdicts = [evaluate_item(reasoner, item, run) for item in items]
        correct = sum(1 for v in run_verdicts if v.correct)
        per_run.append(correct / len(items))
        verdicts.extend(run_verdicts)
        logger.info("Run %d: %d/%d correct", run, correct, len(items))
    return EvalReport.from_runs(per_run, verdicts)


def compare_kgs(
    dataset: Sequence[QAItem],
    store_before: GraphStore,
    store_after: GraphStore,
    config: TempographConfig = None,
    runs: Optional[int] = None,
    seed: Optional[int] = None,
    jobs: Optional[int] = None,
    encoder: Optional[Encoder] = None,
    oracle_factory: T_OracleFactory = create_oracle,
) -> ComparisonReport:
    if not dataset:
        raise ValidationException("cannot compare on an empty dataset")
    return ComparisonReport(
        before=run_eval(
            dataset, store_before, config, runs, seed, jobs, encoder, oracle_factory
        ),
        after=run_eval(
            dataset, store_after, config, runs, seed, jobs, encoder, oracle_factory
        ),
    )


def report_lines(report: EvalReport) -> List[str]:
    """Verdict records followed by the summary record."""
    lines = [dump_json_line(v.to_dict()) for v in report.verdicts]
    lines.append(dump_json_line(report.summary()))
    return lines


def format_percent(value: float) -> str:
    return "{:.1f}%".format(value * 100)


def report_table(report: EvalReport) -> str:
    rows = [
        ["run {}".format(i), format_percent(acc)]
        for i, acc in enumerate(report.per_run_accuracy)
    ]
    rows.append(
        ["mean", "{} ± {}".format(format_percent(report.mean), format_percent(report.std))]
    )
    return format_table(["", "accuracy"], rows)


def comparison_table(comparison: ComparisonReport) -> str:
    rows = []
    for label, report in (("before", comparison.before), ("after", comparison.after)):
        rows.append(
            [
                label,
                format_percent(report.mean),
                format_percent(report.std),
                str(report.runs),
            ]
        )
    rows.append(["delta", "{:+.1f}%".format(comparison.delta * 100), "", ""])
    return format_table(["kg", "mean", "std", "runs"], rows)
