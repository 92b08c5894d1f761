"""
Tempograph (c) 2026 The Tempograph Authors

SPDX-License-Identifier: MIT

QA datasets and accuracy evaluation.
"""

from .dataset import load_dataset, parse_dataset, dataset_lines
from .harness import (
    is_correct,
    evaluate_item,
    run_eval,
    compare_kgs,
    report_lines,
    report_table,
    comparison_table,
)
