"""
Tempograph (c) 2026 The Tempograph Authors

SPDX-License-Identifier: MIT

Question answering over a stored graph.
"""

from .routes import (
    SelectedRoute,
    estimate_subgoal,
    route_cost,
    select_routes,
    nearest_entities,
)
from .grounding import ground_query
from .exploration import (
    verbalize,
    score_path,
    explore_step,
    explore_route,
    candidate_paths,
    TRIPLET_TEMPLATE,
)
from .synthesis import answer_by_voting, vote_masses
from .reasoner import Reasoner, answer
