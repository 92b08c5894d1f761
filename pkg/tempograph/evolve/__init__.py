"""
Tempograph (c) 2026 The Tempograph Authors

SPDX-License-Identifier: MIT

Evolving a stored graph from document corpora.
"""

from .alignment import align_entity, new_entity_id, merge_plain_properties
from .confidence import (
    merge_exclusive_property,
    confidence_score,
    recompute_confidences,
    best_candidate,
    slot_total,
)
from .relations import (
    match_relation_synonym,
    resolve_edge_action,
    resolve_exclusive_action,
    is_property_subset,
)
from .pipeline import Evolver, apply_partial_graph, update_from_corpus, corpus_clock
from .loaders import CorpusLoader, CORPUS_LOADERS, load_corpus
