"""
Tempograph (c) 2026 The Tempograph Authors

SPDX-License-Identifier: MIT

Seeded synthetic worlds for end-to-end tests and experiments.
"""

from .vocab import VOCABULARIES, Vocabulary, RelationSpec, QuestionTemplate
from .world import (
    WorldSpec,
    World,
    WORLD_CONFIG,
    generate_world,
    write_world,
    evolve_store,
    world_reasoner,
    question_candidates,
)
