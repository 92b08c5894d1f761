"""
Tempograph (c) 2026 The Tempograph Authors

SPDX-License-Identifier: MIT
"""

import math
from typing import Callable, Dict, List, Optional, Sequence

from ..helpers import normalize_answer
from ..types import Answer, ReasoningPath
from ..types.exceptions import NoAnswerException, ValidationException


def answer_by_voting(
    paths_per_route: Sequence[Sequence[ReasoningPath]],
    answer_of: Callable[[ReasoningPath], str],
    question: str = "",
    route_positions: Optional[Sequence[int]] = None,
) -> Answer:
    """
    Weighted vote over the paths of every route. Paths are grouped by their
    normalised answer and every group weighs the sum of its confidences. Ties
    go to the group holding the single most confident path, then to the
    lexicographically smaller answer.

    ``route_votes`` of the result are keyed by ``route_positions``, which
    default to the index of each route in ``paths_per_route``.
    """
    if route_positions is None:
        route_positions = range(len(paths_per_route))
    if len(route_positions) != len(paths_per_route):
        raise ValidationException(
            "one route position per route is required",
            (len(route_positions), len(paths_per_route)),
        )
    groups: Dict[str, List[ReasoningPath]] = dict()
    routes_of: Dict[str, Dict[int, List[float]]] = dict()
    shown: Dict[str, str] = dict()
    for route_index, paths in zip(route_positions, paths_per_route):
        for path in paths:
            raw = answer_of(path)
            key = normalize_answer(raw)
            groups.setdefault(key, []).append(path)
            routes_of.setdefault(key, {}).setdefault(route_index, []).append(
                path.confidence
            )
            best = shown.get(key)
            if best is None or raw < best:
                shown[key] = raw
    if not groups:
        raise NoAnswerException("no reasoning path to vote with", question)

    masses = {key: math.fsum(p.confidence for p in paths) for key, paths in groups.items()}
    winner = min(
        groups,
        key=lambda key: (
            -masses[key],
            -max(p.confidence for p in groups[key]),
            key,
        ),
    )
    supporting = sorted(groups[winner], key=lambda p: (-p.confidence, p.key))
    return Answer(
        value=shown[winner],
        confidence_mass=masses[winner],
        supporting_paths=tuple(supporting),
        route_votes={
            route: math.fsum(confidences)
            for route, confidences in sorted(routes_of[winner].items())
        },
    )


def vote_masses(
    paths: Sequence[ReasoningPath], answer_of: Callable[[ReasoningPath], str]
) -> Dict[str, float]:
    """Mass per normalised answer, used for audit records."""
    grouped: Dict[str, List[float]] = dict()
    for path in paths:
        grouped.setdefault(normalize_answer(answer_of(path)), []).append(path.confidence)
    return {key: math.fsum(values) for key, values in sorted(grouped.items())}
