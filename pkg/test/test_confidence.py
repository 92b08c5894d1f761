import math
import random

import pytest

from tempograph.config import EvolutionConfig
from tempograph.evolve import (
    best_candidate,
    confidence_score,
    merge_exclusive_property,
    slot_total,
)
from tempograph.evolve.confidence import days_since, sigmoid
from tempograph.types import Observation, Timestamp, UNKNOWN

NOW = Timestamp.from_iso("2024-12-31")


def test_sigmoid_is_stable_for_large_inputs():
    assert sigmoid(0) == 0.5
    assert sigmoid(1000) == 1.0
    assert sigmoid(-1000) == 0.0


def test_delta_zero_is_source_weight():
    for w in (0.1, 0.5, 1.0):
        assert confidence_score(0.3, 12.0, w, -0.05, 0.0) == w


def test_delta_one_fresh_observation_is_half_frequency():
    for f in (0.0, 0.25, 1.0):
        assert confidence_score(f, 0.0, 0.4, -0.05, 1.0) == pytest.approx(f / 2)


def test_confidence_stays_in_unit_interval():
    rng = random.Random(42)
    for _ in range(10000):
        value = confidence_score(
            rng.random(),
            rng.uniform(0, 20000),
            rng.uniform(1e-6, 1.0),
            rng.uniform(-1.0, 1.0),
            rng.random(),
        )
        assert 0.0 <= value <= 1.0


def test_staleness_lowers_confidence_with_negative_gamma():
    fresh = confidence_score(0.5, 0.0, 1.0, -0.05, 0.7)
    stale = confidence_score(0.5, 365.0, 1.0, -0.05, 0.7)
    assert stale < fresh


def test_days_since_unknown_is_zero():
    assert days_since(UNKNOWN, NOW) == 0.0
    assert days_since(NOW, UNKNOWN) == 0.0
    assert days_since(Timestamp.from_iso("2024-12-30"), NOW) == 1.0


def observe(slot, value, doc, config):
    return merge_exclusive_property(slot, Observation(value, doc, NOW), config, NOW)


def test_majority_value_wins():
    config = EvolutionConfig()
    slot = ()
    for i in range(7):
        slot = observe(slot, "1990-04-01", "doc-t{}".format(i), config)
    for i in range(3):
        slot = observe(slot, "1991-04-01", "doc-f{}".format(i), config)

    assert slot_total(slot) == 10
    value, confidence = best_candidate(slot)
    assert value == "1990-04-01"
    true, false = slot
    # delta * f * sigmoid(0) + (1 - delta) * w
    assert true.confidence == pytest.approx(0.7 * 0.7 * 0.5 + 0.3)
    assert false.confidence == pytest.approx(0.7 * 0.3 * 0.5 + 0.3)
    assert confidence == true.confidence


def test_merge_never_drops_candidates_and_caps_contexts():
    config = EvolutionConfig(context_cap=4)
    slot = ()
    for i in range(10):
        slot = observe(slot, "a", "doc-{}".format(i), config)
    slot = observe(slot, "b", "doc-x", config)
    assert [c.value for c in slot] == ["a", "b"]
    assert slot[0].frequency_count == 10
    assert slot[0].contexts == ("doc-6", "doc-7", "doc-8", "doc-9")
    assert math.isclose(sum(c.frequency_count for c in slot) / slot_total(slot), 1.0)


def test_ties_break_by_value():
    config = EvolutionConfig()
    slot = observe((), "b", "doc-1", config)
    slot = observe(slot, "a", "doc-2", config)
    assert best_candidate(slot)[0] == "a"
