import io
import json
import random
import threading
from unittest import TestCase

import pytest

from tempograph.graph import GraphStore, snapshot_lines, snapshot_load, snapshot_save
from tempograph.types import (
    Edge,
    Entity,
    PropertyCandidate,
    PropertyMap,
    RelationSchema,
    TemporalInterval,
)
from tempograph.types.exceptions import (
    ReferentialException,
    SnapshotFormatException,
    ValidationException,
)


def small_store() -> GraphStore:
    store = GraphStore()
    with store.batch():
        store.register_schema(RelationSchema("Player", "played for", "Team"))
        store.register_schema(RelationSchema("Team", "based in", "City"))
        store.register_schema(RelationSchema("Player", "birthday", "Date", True))
        store.upsert_entity(
            Entity(
                "v-marco",
                "Player",
                "Marco Rossi",
                properties=PropertyMap(
                    {
                        "birthday": (
                            PropertyCandidate(
                                "1990-04-01", 0.8, "doc-1", contexts=("doc-1",)
                            ),
                        )
                    }
                ),
            )
        )
        store.upsert_entity(Entity("v-lions", "Team", "Northside Lions"))
        store.upsert_entity(Entity("v-riverton", "City", "Riverton"))
        store.insert_edge(
            Edge.create(
                "v-marco",
                "played for",
                "v-lions",
                TemporalInterval.from_iso("2019-01-01", "2019-12-31"),
            )
        )
        store.insert_edge(Edge.create("v-lions", "based in", "v-riverton"))
    return store


class TestGraphStore(TestCase):
    def setUp(self):
        self.store = small_store()

    def test_batch_bumps_revision_once(self):
        self.assertEqual(self.store.revision, 1)
        self.store.upsert_entity(Entity("v-x", "City", "Ashford"))
        self.assertEqual(self.store.revision, 2)

    def test_failed_batch_rolls_back(self):
        before = self.store.copy()
        with self.assertRaises(ReferentialException):
            with self.store.batch():
                self.store.upsert_entity(Entity("v-x", "City", "Ashford"))
                self.store.insert_edge(Edge.create("v-x", "based in", "v-missing"))
        self.assertTrue(self.store.content_equals(before))
        self.assertNotIn("v-x", self.store.entities)

    def test_duplicate_edge_is_a_no_op(self):
        edge = Edge.create("v-lions", "based in", "v-riverton")
        self.assertEqual(self.store.insert_edge(edge), edge.id)
        self.assertEqual(len(self.store.edges), 2)

    def test_adjacency_queries(self):
        self.assertEqual(self.store.out_relations("v-marco"), {"played for": 1})
        self.assertEqual(self.store.in_relations("v-riverton"), {"based in": 1})
        self.assertEqual(len(self.store.find_edges("v-marco", "played for", "v-lions")), 1)
        self.assertEqual(self.store.find_edges("v-marco", "based in"), [])
        with self.assertRaises(ReferentialException):
            self.store.find_edges("v-nobody")

    def test_degree_medians(self):
        # out-relations per entity: marco 1, lions 1, riverton 0
        self.assertEqual(self.store.degree_medians(), (1, 1))
        self.assertEqual(GraphStore().degree_medians(), (0.0, 0.0))

    def test_remove_entity_removes_incident_edges(self):
        self.store.remove_entity("v-lions")
        self.assertEqual(len(self.store.edges), 0)
        self.assertEqual(self.store.out_relations("v-marco"), {})
        self.assertEqual(self.store.audit(), [])

    def test_exclusive_flag_is_immutable(self):
        with self.assertRaises(ValidationException):
            self.store.register_schema(RelationSchema("Player", "birthday", "Date", False))
        with self.assertRaises(ValidationException):
            self.store.register_schema(RelationSchema("Person", "birthday", "Date", False))
        same = self.store.register_schema(RelationSchema("Player", "played for", "Team"))
        self.assertFalse(same.exclusive)

    def test_property_kinds_follow_schemas(self):
        with self.assertRaises(ValidationException):
            self.store.upsert_entity(
                Entity("v-y", "Player", "Y", properties=PropertyMap({"birthday": "1990"}))
            )

    def test_describe_entity(self):
        self.assertEqual(
            self.store.describe_entity("v-lions"),
            '(Team: Northside Lions, desc: "", props: {})',
        )

    def test_audit_is_clean(self):
        self.assertEqual(self.store.audit(), [])

    def test_copy_is_independent(self):
        clone = self.store.copy()
        clone.remove_entity("v-riverton")
        self.assertIn("v-riverton", self.store.entities)
        self.assertFalse(clone.content_equals(self.store))


def test_snapshot_round_trip():
    store = small_store()
    buffer = io.StringIO()
    snapshot_save(store, buffer)
    loaded = snapshot_load(io.StringIO(buffer.getvalue()))
    assert loaded == store
    assert snapshot_lines(loaded) == snapshot_lines(store)


def test_snapshot_is_byte_stable(tmp_path):
    first, second = tmp_path / "a.jsonl", tmp_path / "b.jsonl"
    snapshot_save(small_store(), str(first))
    snapshot_save(snapshot_load(str(first)), str(second))
    assert first.read_bytes() == second.read_bytes()


def test_snapshot_errors_carry_line_numbers():
    lines = snapshot_lines(small_store())
    with pytest.raises(SnapshotFormatException) as info:
        snapshot_load(lines[:1] + ["{not json"] + lines[1:])
    assert info.value.line == 2

    with pytest.raises(SnapshotFormatException) as info:
        snapshot_load(lines[1:])
    assert info.value.line == 1

    dangling = '{"kind":"edge","id":"e-1","source":"v-marco","relation":"played for","target":"v-nobody"}'
    with pytest.raises(SnapshotFormatException) as info:
        snapshot_load(lines + [dangling])
    assert info.value.line == len(lines) + 1


def test_snapshot_rejects_unknown_version():
    lines = snapshot_lines(GraphStore())
    with pytest.raises(SnapshotFormatException):
        snapshot_load([lines[0].replace('"format_version":1', '"format_version":99')])


def test_snapshot_rejects_a_repeated_edge_under_another_id():
    lines = snapshot_lines(small_store())
    (played,) = [
        json.loads(line) for line in lines if '"relation":"played for"' in line
    ]
    played["id"] = "e-copy"
    with pytest.raises(SnapshotFormatException) as info:
        snapshot_load(lines + [json.dumps(played)])
    assert info.value.line == len(lines) + 1


def random_store(rng: random.Random) -> GraphStore:
    store = GraphStore()
    types = ["Player", "Team", "City"]
    relations = ["played for", "based in", "rival of"]
    with store.batch():
        for subject, relation, object in zip(types, relations, types[1:] + types[:1]):
            store.register_schema(RelationSchema(subject, relation, object))
        store.register_schema(RelationSchema("Player", "birthday", "Date", True))
        for i in range(rng.randint(2, 12)):
            type = rng.choice(types)
            properties = {"rank": str(rng.randint(1, 9))}
            if type == "Player" and rng.random() < 0.5:
                properties["birthday"] = tuple(
                    PropertyCandidate(
                        "199{}-04-01".format(v),
                        rng.random(),
                        "doc-{}".format(v),
                        frequency_count=rng.randint(1, 7),
                        contexts=("doc-{}".format(v),),
                    )
                    for v in rng.sample(range(10), rng.randint(1, 3))
                )
            store.upsert_entity(
                Entity(
                    "v-{:02d}".format(i),
                    type,
                    "Entity {}".format(i),
                    rng.choice(["", "a \"quoted\" note", "ünïcode"]),
                    PropertyMap(properties),
                )
            )
        ids = store.entity_ids()
        for _ in range(rng.randint(0, 30)):
            year = rng.randint(2015, 2024)
            interval = rng.choice(
                [
                    TemporalInterval.always(),
                    TemporalInterval.from_iso(
                        "{}-01-01".format(year), "{}-12-31".format(year)
                    ),
                ]
            )
            store.insert_edge(
                Edge.create(
                    rng.choice(ids), rng.choice(relations), rng.choice(ids), interval
                )
            )
    return store


def test_random_stores_survive_a_snapshot():
    rng = random.Random(21)
    for trial in range(30):
        store = random_store(rng)
        loaded = snapshot_load(snapshot_lines(store))
        assert loaded == store, trial
        assert loaded.revision == store.revision
        assert dict(loaded.entities) == dict(store.entities)
        assert dict(loaded.edges) == dict(store.edges)
        assert loaded.schemas == store.schemas
        assert loaded.audit() == []


def test_views_are_stable_while_the_store_changes():
    store = small_store()
    entities = store.entities
    store.upsert_entity(Entity("v-ashford", "City", "Ashford"))
    assert "v-ashford" not in entities
    assert "v-ashford" in store.entities
    assert store.has_entity("v-ashford")
    assert not store.has_edge("e-missing")

    errors = []
    done = threading.Event()

    def read():
        try:
            while not done.is_set():
                for entity_id, entity in store.entities.items():
                    assert entity.id == entity_id
        except Exception as ex:
            errors.append(ex)

    reader = threading.Thread(target=read)
    reader.start()
    try:
        for i in range(500):
            store.upsert_entity(Entity("v-extra-{}".format(i), "City", "Town {}".format(i)))
    finally:
        done.set()
        reader.join()
    assert errors == []
