import itertools
from unittest import TestCase

import pytest

from tempograph.config import EvolutionConfig
from tempograph.embed import EmbeddingIndex, HashingEncoder, cosine_sim
from tempograph.evolve import (
    is_property_subset,
    match_relation_synonym,
    resolve_edge_action,
    resolve_exclusive_action,
)
from tempograph.graph import GraphStore
from tempograph.types import (
    Edge,
    Entity,
    MergeKind,
    PropertyCandidate,
    PropertyMap,
    RelationSchema,
    ResolvedEdge,
    TemporalInterval,
)
from tempograph.types.exceptions import PreconditionException

SEASON = TemporalInterval.from_iso("2019-01-01", "2019-12-31")
OTHER_SEASON = TemporalInterval.from_iso("2020-01-01", "2020-12-31")


def rule_store() -> GraphStore:
    store = GraphStore()
    with store.batch():
        store.register_schema(RelationSchema("Player", "played for", "Team"))
        store.register_schema(RelationSchema("Player", "member of", "Team"))
        store.register_schema(RelationSchema("Player", "birthday", "Date", True))
        store.upsert_entity(
            Entity(
                "v-marco",
                "Player",
                "Marco Rossi",
                properties=PropertyMap(
                    {"birthday": (PropertyCandidate("1990-04-01", contexts=("doc-1",)),)}
                ),
            )
        )
        store.upsert_entity(Entity("v-lions", "Team", "Northside Lions"))
        store.insert_edge(
            Edge.create(
                "v-marco",
                "played for",
                "v-lions",
                SEASON,
                PropertyMap({"position": "striker"}),
            )
        )
    return store


class TestEdgeRules(TestCase):
    def setUp(self):
        self.store = rule_store()

    def resolve(self, relation, matched=None, interval=SEASON, **props):
        candidate = ResolvedEdge(
            "v-marco", relation, "v-lions", interval, PropertyMap(props)
        )
        return resolve_edge_action(candidate, matched, self.store)

    def test_insert_without_matching_edge(self):
        self.assertEqual(self.resolve("coached").kind, MergeKind.Insert)
        # parallel edges differ by interval
        self.assertEqual(
            self.resolve("played for", interval=OTHER_SEASON).kind, MergeKind.Insert
        )

    def test_skip_when_nothing_new(self):
        self.assertEqual(self.resolve("played for").kind, MergeKind.Skip)
        self.assertEqual(
            self.resolve("played for", "played for", position="striker").kind,
            MergeKind.Skip,
        )

    def test_merge_when_properties_are_new(self):
        action = self.resolve("played for", position="keeper")
        self.assertEqual(action.kind, MergeKind.Merge)
        self.assertIsNone(action.mapped_relation)

    def test_map_merge_into_existing_synonym_edge(self):
        action = self.resolve("plays for", "played for")
        self.assertEqual(action.kind, MergeKind.MapMerge)
        self.assertEqual(action.mapped_relation, "played for")

    def test_map_insert_under_synonym(self):
        action = self.resolve("plays for", "played for", interval=OTHER_SEASON)
        self.assertEqual(action.kind, MergeKind.MapInsert)
        action = self.resolve("joined", "member of")
        self.assertEqual(action.kind, MergeKind.MapInsert)
        self.assertEqual(action.mapped_relation, "member of")

    def test_unaligned_endpoints_are_rejected(self):
        candidate = ResolvedEdge("v-marco", "played for", "v-nobody", SEASON)
        with self.assertRaises(PreconditionException):
            resolve_edge_action(candidate, None, self.store)


class TestExclusiveRules(TestCase):
    def setUp(self):
        self.store = rule_store()

    def resolve(self, relation, matched, value, context):
        return resolve_exclusive_action(
            "v-marco", relation, matched, value, context, self.store
        )

    def test_new_slot(self):
        self.assertEqual(
            self.resolve("height", None, "1.80", "doc-2").kind, MergeKind.Insert
        )
        action = self.resolve("born on", "height", "1.80", "doc-2")
        self.assertEqual(action.kind, MergeKind.MapInsert)
        self.assertEqual(action.mapped_relation, "height")

    def test_same_value_same_context_is_skipped(self):
        self.assertEqual(
            self.resolve("birthday", None, "1990-04-01", "doc-1").kind, MergeKind.Skip
        )
        self.assertEqual(
            self.resolve("born on", "birthday", "1990-04-01", "doc-1").kind,
            MergeKind.Skip,
        )

    def test_new_observations_merge(self):
        self.assertEqual(
            self.resolve("birthday", None, "1990-04-01", "doc-2").kind, MergeKind.Merge
        )
        self.assertEqual(
            self.resolve("birthday", None, "1991-04-01", "doc-1").kind, MergeKind.Merge
        )
        action = self.resolve("born on", "birthday", "1991-04-01", "doc-3")
        self.assertEqual(action.kind, MergeKind.MapMerge)

    def test_unknown_subject(self):
        with self.assertRaises(PreconditionException):
            resolve_exclusive_action("v-x", "birthday", None, "v", "d", self.store)


def test_property_subset():
    slot = (PropertyCandidate("a"), PropertyCandidate("b"))
    existing = PropertyMap({"k": "v", "s": slot})
    assert is_property_subset(PropertyMap(), existing)
    assert is_property_subset(PropertyMap({"k": "v"}), existing)
    assert is_property_subset(PropertyMap({"s": (PropertyCandidate("b"),)}), existing)
    assert not is_property_subset(PropertyMap({"s": (PropertyCandidate("c"),)}), existing)
    assert not is_property_subset(PropertyMap({"k": "w"}), existing)
    assert not is_property_subset(PropertyMap({"z": "v"}), existing)


def test_synonym_matching_is_exact_for_registered_schemas():
    store = rule_store()
    encoder = HashingEncoder()
    index = EmbeddingIndex.for_schemas(store, encoder)
    config = EvolutionConfig()

    same = match_relation_synonym(
        RelationSchema("Player", "birthday", "Date"), store, index, encoder, config
    )
    assert same.matched and same.relation == "birthday" and same.exclusive
    assert same.score == 1.0

    unrelated = match_relation_synonym(
        RelationSchema("Venue", "opened", "Year"), store, index, encoder, config
    )
    assert not unrelated.matched
    assert not match_relation_synonym(
        RelationSchema("Player", "birthday", "Date"),
        store,
        EmbeddingIndex(encoder.dimension),
        encoder,
        config,
    ).matched


def expected_edge_kind(relation, matched, stored_relation, stored_interval, props):
    target = matched if matched is not None else relation
    exists = stored_relation == target and stored_interval == SEASON
    if target != relation:
        return MergeKind.MapMerge if exists else MergeKind.MapInsert
    if not exists:
        return MergeKind.Insert
    if set(props.items()) <= {("position", "striker")}:
        return MergeKind.Skip
    return MergeKind.Merge


def test_every_edge_situation_has_exactly_one_action():
    seen = set()
    for matched, stored_relation, stored_interval, props in itertools.product(
        (None, "played for", "member of"),
        ("played for", "member of"),
        (None, SEASON, OTHER_SEASON),
        ({}, {"position": "striker"}, {"position": "keeper"}, {"captain": "yes"}),
    ):
        store = GraphStore()
        with store.batch():
            store.upsert_entity(Entity("v-marco", "Player", "Marco Rossi"))
            store.upsert_entity(Entity("v-lions", "Team", "Northside Lions"))
            if stored_interval is not None:
                store.insert_edge(
                    Edge.create(
                        "v-marco",
                        stored_relation,
                        "v-lions",
                        stored_interval,
                        PropertyMap({"position": "striker"}),
                    )
                )
        candidate = ResolvedEdge(
            "v-marco", "played for", "v-lions", SEASON, PropertyMap(props)
        )
        action = resolve_edge_action(candidate, matched, store)
        expected = expected_edge_kind(
            "played for", matched, stored_relation, stored_interval, props
        )
        assert action.kind == expected, (matched, stored_relation, stored_interval, props)
        if expected in (MergeKind.MapMerge, MergeKind.MapInsert):
            assert action.mapped_relation == "member of"
        else:
            assert action.mapped_relation is None
        seen.add(action.kind)
    assert seen == set(MergeKind)


def test_employment_relation_synonym():
    store = GraphStore()
    store.register_schema(RelationSchema("Person", "works as", "Organization"))
    encoder = HashingEncoder()
    index = EmbeddingIndex.for_schemas(store, encoder)
    config = EvolutionConfig(theta_relation=0.2)
    cosine = cosine_sim(
        encoder.encode_schema("Person", "employed as", "Organization"),
        encoder.encode_schema("Person", "works as", "Organization"),
    )
    match = match_relation_synonym(
        RelationSchema("Person", "employed as", "Organization"), store, index, encoder, config
    )
    assert match.score == pytest.approx(cosine)
    assert match.matched == (cosine > 0.2)
    # shares the types, "as" and "as organization"
    assert match.matched
    assert match.relation == "works as"
