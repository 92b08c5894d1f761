"""
Tempograph (c) 2026 The Tempograph Authors

SPDX-License-Identifier: MIT

A temporal knowledge graph engine: keeps an interval-qualified property graph
current from document corpora and answers multi-hop questions over it with
weighted path voting.

Every judgment that would need a language model goes through an oracle, so
the whole pipeline also runs offline and deterministically.
"""

from .types.exceptions import (
    TempographBaseException,
    ValidationException,
    ReferentialException,
    IntervalException,
    TimestampComparisonException,
    PreconditionException,
    ConfigException,
    SnapshotFormatException,
    DatasetException,
    WorldSpecException,
    OracleFormatException,
    TransportException,
    OracleBudgetException,
    NoAnswerException,
)

from .types import (
    Timestamp,
    UNKNOWN,
    TemporalInterval,
    PropertyCandidate,
    PropertyMap,
    Entity,
    Edge,
    RelationSchema,
    Document,
    Answer,
    QAItem,
)
from .config import (
    TempographConfig,
    OracleConfig,
    EvolutionConfig,
    ReasonerConfig,
    EvalConfig,
)
from .graph import GraphStore, snapshot_save, snapshot_load
from .embed import create_encoder, EmbeddingIndex
from .oracle import create_oracle, DeterministicOracle, RemoteOracle
from .evolve import Evolver, update_from_corpus, apply_partial_graph, load_corpus
from .reason import Reasoner, answer
from .eval import run_eval, compare_kgs, load_dataset

__author__ = "The Tempograph Authors"
__copyright__ = "Copyright 2026 The Tempograph Authors"
__version__ = "0.3.0"
