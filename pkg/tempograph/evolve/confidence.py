"""
Tempograph (c) 2026 The Tempograph Authors

SPDX-License-Identifier: MIT

Confidence of the candidate values of an exclusive relation slot.

    C(o) = delta * f(o) / (1 + exp(-gamma * dt(o))) + (1 - delta) * w(o)

where f(o) is the value's share of all observations of the slot, dt(o) the
number of days between ``now`` and the value's last sighting and w(o) its
source weight. The sign of ``gamma`` decides whether old observations gain
or lose weight; the default configuration uses a negative value so that
confidence decays with staleness.
"""

import math
from dataclasses import replace
from typing import Tuple

from ..config import EvolutionConfig
from ..types import PropertyCandidate, CandidateSet, Observation, Timestamp
from ..types.property_map import bump_candidate

SECONDS_PER_DAY = 86400.0


def sigmoid(z: float) -> float:
    if z >= 0:
        return 1.0 / (1.0 + math.exp(-z))
    ez = math.exp(z)
    return ez / (1.0 + ez)


def confidence_score(
    frequency: float, dt_days: float, source_weight: float, gamma: float, delta: float
) -> float:
    value = delta * frequency * sigmoid(gamma * dt_days) + (1.0 - delta) * source_weight
    return min(1.0, max(0.0, value))


def days_since(last_seen: Timestamp, now: Timestamp) -> float:
    """Elapsed days, zero when either side is unknown."""
    if not last_seen.known or not now.known:
        return 0.0
    return (now - last_seen) / SECONDS_PER_DAY


def recompute_confidences(
    slot: CandidateSet, config: EvolutionConfig, now: Timestamp
) -> CandidateSet:
    total = sum(c.frequency_count for c in slot)
    return tuple(
        replace(
            c,
            confidence=confidence_score(
                c.frequency_count / total,
                days_since(c.last_seen, now),
                c.source_weight,
                config.gamma,
                config.delta,
            ),
        )
        for c in slot
    )


def slot_has_observation(slot: CandidateSet, value: str, context: str) -> bool:
    """Whether ``value`` was already observed under ``context``."""
    return any(c.value == value and context in c.contexts for c in slot)


def merge_exclusive_property(
    slot: CandidateSet,
    observation: Observation,
    config: EvolutionConfig,
    now: Timestamp,
) -> CandidateSet:
    """
    Fold one observation into a candidate set. A known value is re-counted,
    an unknown one appended; then every confidence is recomputed. Candidates
    are never dropped.
    """
    updated = []
    found = False
    for candidate in slot:
        if candidate.value == observation.value:
            candidate = bump_candidate(
                candidate,
                observation.context,
                observation.observed_at,
                observation.source_weight,
                config.context_cap,
            )
            found = True
        updated.append(candidate)
    if not found:
        updated.append(
            PropertyCandidate(
                value=observation.value,
                context=observation.context,
                frequency_count=1,
                last_seen=observation.observed_at,
                source_weight=observation.source_weight,
                contexts=(observation.context,),
            )
        )
    return recompute_confidences(tuple(updated), config, now)


def slot_total(slot: CandidateSet) -> int:
    return sum(c.frequency_count for c in slot)


def best_candidate(slot: CandidateSet) -> Tuple[str, float]:
    """The most confident value, ties broken by value."""
    best = min(slot, key=lambda c: (-c.confidence, c.value))
    return best.value, best.confidence
