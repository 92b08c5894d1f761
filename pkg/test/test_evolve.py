import json
import random
from collections import Counter
from unittest import TestCase

import pytest

from tempograph.config import EvolutionConfig
from tempograph.embed import EmbeddingIndex, HashingEncoder
from tempograph.evolve import (
    Evolver,
    align_entity,
    best_candidate,
    corpus_clock,
    load_corpus,
    merge_plain_properties,
    new_entity_id,
    slot_total,
    update_from_corpus,
)
from tempograph.graph import GraphStore
from tempograph.oracle import DeterministicOracle
from tempograph.types import (
    CandidateEntity,
    Document,
    Entity,
    PropertyMap,
    Timestamp,
    UNKNOWN,
    entity_id_for,
)
from tempograph.types.exceptions import DatasetException, OracleFormatException

CONFIG = EvolutionConfig(theta_entity=0.9)


def doc(id, published, *facts):
    return Document(
        id=id,
        title=id,
        text="\n".join(["Profile of the season."] + list(facts)),
        published_at=Timestamp.from_iso(published),
    )


CORPUS = [
    doc(
        "doc-1",
        "2024-01-01",
        "FACT|Player|Marco Rossi|played for|Team|Northside Lions|2019-01-01|2019-12-31|false",
        "FACT|Player|Marco Rossi|birthday|Date|1990-04-01|?|?|true",
        "FACT|Team|Northside Lions|based in|City|Riverton|?|?|false",
    ),
    doc(
        "doc-2",
        "2024-02-01",
        "FACT|Player|Marco Rossi|birthday|Date|1991-04-01|?|?|true",
        "FACT|Player|Marco Rossi|played for|Team|Northside Lions|2020-01-01|2020-12-31|false",
    ),
]


def evolve(documents, store=None, config=CONFIG):
    store = store if store is not None else GraphStore()
    report = update_from_corpus(
        documents,
        store,
        DeterministicOracle(),
        HashingEncoder(),
        config,
        corpus_clock(CORPUS),
    )
    return store, report


class TestCorpusUpdate(TestCase):
    def test_builds_graph_from_empty_store(self):
        store, report = evolve(CORPUS)
        marco = entity_id_for("Player", "Marco Rossi")
        self.assertEqual(
            set(store.entities),
            {marco, entity_id_for("Team", "Northside Lions"), entity_id_for("City", "Riverton")},
        )
        self.assertEqual(len(store.edges), 3)
        self.assertEqual(store.out_relations(marco), {"played for": 2})
        summary = report.summary()
        self.assertEqual(summary["entities_inserted"], 3)
        self.assertEqual(summary["entities_aligned"], 2)
        self.assertEqual(summary["edges"]["Insert"], 4)
        self.assertEqual(summary["edges"]["Merge"], 1)
        self.assertEqual(summary["documents_failed"], 0)
        self.assertEqual(store.audit(), [])

    def test_exclusive_values_become_candidates(self):
        store, report = evolve(CORPUS)
        slot = store.get_entity(entity_id_for("Player", "Marco Rossi")).properties.slot(
            "birthday"
        )
        self.assertEqual(sorted(c.value for c in slot), ["1990-04-01", "1991-04-01"])
        # equal counts, the fresher sighting wins
        self.assertEqual(best_candidate(slot)[0], "1991-04-01")
        self.assertTrue(
            any(s.relation == "birthday" and s.exclusive for s in store.schemas)
        )

    def test_second_pass_changes_nothing(self):
        store, _ = evolve(CORPUS)
        before = store.copy()
        _, report = evolve(CORPUS, store)
        self.assertTrue(store.content_equals(before, include_revision=False))
        summary = report.summary()
        self.assertEqual(summary["entities_inserted"], 0)
        self.assertEqual(summary["entities_aligned"], 5)
        self.assertEqual(summary["edges"]["Skip"], 5)
        self.assertEqual(summary["edges"]["Insert"], 0)

    def test_document_order_does_not_change_the_graph(self):
        forward, _ = evolve(CORPUS)
        backward, _ = evolve(list(reversed(CORPUS)))
        self.assertEqual(set(forward.entities), set(backward.entities))
        self.assertEqual(set(forward.edges), set(backward.edges))
        marco = entity_id_for("Player", "Marco Rossi")
        slots = [
            s.get_entity(marco).properties.slot("birthday") for s in (forward, backward)
        ]
        self.assertEqual(
            *[sorted((c.value, c.frequency_count) for c in slot) for slot in slots]
        )
        self.assertEqual(*[best_candidate(slot) for slot in slots])

    def test_failing_document_is_recorded_and_skipped(self):
        bad = doc("doc-bad", "2024-01-15", "FACT|Player|Marco Rossi|played for")
        store, report = evolve([CORPUS[0], bad, CORPUS[1]])
        self.assertEqual(len(report.failures), 1)
        self.assertEqual(report.failures[0]["document"], "doc-bad")
        self.assertEqual(report.failures[0]["error"], "OracleFormatException")
        self.assertEqual(len(store.edges), 3)

    def test_fail_fast_raises(self):
        bad = doc("doc-bad", "2024-01-15", "FACT|nope")
        with self.assertRaises(OracleFormatException):
            evolve([bad], config=EvolutionConfig(fail_fast=True))

    def test_known_exclusive_flag_wins_over_extraction(self):
        store, _ = evolve(CORPUS[:1])
        contradicting = doc(
            "doc-3",
            "2024-01-20",
            "FACT|Player|Marco Rossi|birthday|Date|1990-04-01|?|?|false",
        )
        evolve([contradicting], store)
        self.assertEqual(
            [s.exclusive for s in store.schemas if s.relation == "birthday"], [True]
        )


def test_corpus_clock():
    assert corpus_clock([]) is UNKNOWN
    assert corpus_clock([Document(id="a", text="")]) is UNKNOWN
    assert corpus_clock(CORPUS) == Timestamp.from_iso("2024-02-01")


def test_alignment_needs_the_threshold():
    store = GraphStore()
    store.upsert_entity(Entity("v-1", "City", "Riverton"))
    encoder = HashingEncoder()
    index = EmbeddingIndex.for_entities(store, encoder)
    oracle = DeterministicOracle(encoder)

    exact = align_entity(
        CandidateEntity("City:Riverton", "City", "Riverton"), store, index, oracle, encoder, CONFIG
    )
    assert exact.aligned and exact.target_id == "v-1" and exact.score == 1.0

    other = align_entity(
        CandidateEntity("City:Ashford", "City", "Ashford"), store, index, oracle, encoder, CONFIG
    )
    assert not other.aligned

    empty = EmbeddingIndex(encoder.dimension)
    assert not align_entity(
        CandidateEntity("City:Riverton", "City", "Riverton"),
        GraphStore(),
        empty,
        oracle,
        encoder,
        CONFIG,
    ).aligned


def test_new_entity_ids_avoid_namesakes():
    store = GraphStore()
    base = entity_id_for("City", "Riverton")
    assert new_entity_id(store, "City", "Riverton") == base
    store.upsert_entity(Entity(base, "City", "Riverton"))
    assert new_entity_id(store, "City", "Riverton") == base + "-2"


def test_plain_property_merge_keeps_stored_values():
    merged, conflicts = merge_plain_properties(
        PropertyMap({"a": "1", "b": "2"}), PropertyMap({"b": "3", "c": "4"})
    )
    assert dict(merged.plain_items()) == {"a": "1", "b": "2", "c": "4"}
    assert conflicts == 1


def test_jsonl_corpus_loader(tmp_path):
    path = tmp_path / "corpus.jsonl"
    path.write_text(
        "\n".join(json.dumps(d.to_dict()) for d in CORPUS) + "\n", encoding="utf-8"
    )
    assert load_corpus(str(path)) == CORPUS

    path.write_text(
        json.dumps(CORPUS[0].to_dict()) + "\n" + json.dumps(CORPUS[0].to_dict()) + "\n",
        encoding="utf-8",
    )
    with pytest.raises(DatasetException) as info:
        load_corpus(str(path))
    assert info.value.index == 1

    path.write_text('{"id": "x"}\n', encoding="utf-8")
    with pytest.raises(DatasetException):
        load_corpus(str(path))


def test_text_loader(tmp_path):
    path = tmp_path / "match report.txt"
    path.write_text("FACT|City|Riverton|twinned with|City|Ashford|?|?|false", encoding="utf-8")
    (document,) = load_corpus(str(path))
    assert document.id == "match report"
    assert document.published_at is UNKNOWN


def test_evolver_keeps_indexes_current():
    store = GraphStore()
    evolver = Evolver(store, DeterministicOracle(), HashingEncoder(), CONFIG)
    evolver.update_from_corpus(CORPUS)
    assert len(evolver.entity_index) == len(store.entities)
    assert len(evolver.schema_index) == len(store.schemas)


def test_disjoint_names_stay_apart_under_default_thresholds():
    documents = [
        doc(
            "doc-a",
            "2024-01-01",
            "FACT|Player|Marco Rossi|played for|Team|Northside Lions|2019-01-01|2019-12-31|false",
        ),
        doc(
            "doc-b",
            "2024-02-01",
            "FACT|Player|Luca Bianchi|played for|Team|Southside Hawks|2020-01-01|2020-12-31|false",
        ),
    ]
    forward, report = evolve(documents, config=EvolutionConfig())
    backward, _ = evolve(list(reversed(documents)), config=EvolutionConfig())
    expected = {
        entity_id_for("Player", "Marco Rossi"),
        entity_id_for("Team", "Northside Lions"),
        entity_id_for("Player", "Luca Bianchi"),
        entity_id_for("Team", "Southside Hawks"),
    }
    assert set(forward.entities) == expected
    assert set(backward.entities) == expected
    assert set(forward.edges) == set(backward.edges)
    assert len(forward.edges) == 2
    assert report.summary()["entities_aligned"] == 0


def test_overlapping_descriptions_align_above_a_low_threshold():
    store = GraphStore()
    store.upsert_entity(
        Entity(
            "v-pixar",
            "Company",
            "Pixar Animation Studio",
            "computer animation film studio in Emeryville California",
        )
    )
    store.upsert_entity(Entity("v-other", "Company", "Harbor Freight Lines", "shipping"))
    encoder = HashingEncoder()
    index = EmbeddingIndex.for_entities(store, encoder)
    result = align_entity(
        CandidateEntity(
            "Company:Pixar Company",
            "Company",
            "Pixar Company",
            "computer animation film studio in Emeryville California",
        ),
        store,
        index,
        DeterministicOracle(encoder),
        encoder,
        EvolutionConfig(theta_entity=0.3),
    )
    assert result.aligned
    assert result.target_id == "v-pixar"
    assert 0.3 <= result.score < 1.0


def test_slot_counts_replay_the_observation_log():
    rng = random.Random(5)
    subjects = ["Marco Rossi", "Luca Bianchi"]
    values = ["1990-04-01", "1991-04-01", "1992-04-01"]
    log = [(rng.choice(subjects), rng.choice(values)) for _ in range(40)]
    documents = [
        doc(
            "doc-{:02d}".format(i),
            "2024-01-{:02d}".format(i % 28 + 1),
            "FACT|Player|{}|birthday|Date|{}|?|?|true".format(subject, value),
        )
        for i, (subject, value) in enumerate(log)
    ]
    store, report = evolve(documents, config=EvolutionConfig())
    assert not report.failures
    for subject in subjects:
        expected = Counter(value for s, value in log if s == subject)
        slot = store.get_entity(entity_id_for("Player", subject)).properties.slot(
            "birthday"
        )
        assert {c.value: c.frequency_count for c in slot} == dict(expected)
        assert slot_total(slot) == sum(expected.values())

    # a second pass sees every observation again under the same context
    evolve(documents, store, config=EvolutionConfig())
    for subject in subjects:
        slot = store.get_entity(entity_id_for("Player", subject)).properties.slot(
            "birthday"
        )
        assert slot_total(slot) == sum(1 for s, _ in log if s == subject)
