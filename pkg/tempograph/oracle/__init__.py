"""
Tempograph (c) 2026 The Tempograph Authors

SPDX-License-Identifier: MIT

The judgment interface and its backends.
"""

from typing import Optional

from ..config import OracleConfig
from ..embed import Encoder
from .base import Oracle, BudgetedOracle, candidate_key
from .deterministic import DeterministicOracle, renormalize
from .remote import RemoteOracle, extract_json_block
from .facts import (
    FactRecord,
    parse_fact_line,
    parse_fact_block,
    partial_graph_from_facts,
    entity_key,
)
from .prompts import render_prompt, load_template, PROMPT_VERSION


def create_oracle(config: OracleConfig, encoder: Optional[Encoder] = None) -> Oracle:
    if config.backend == "remote":
        return RemoteOracle(config)
    return DeterministicOracle(encoder)
