import pytest

from tempograph.types import (
    Timestamp,
    UNKNOWN,
    TemporalInterval,
    PropertyCandidate,
    PropertyMap,
    Entity,
    Edge,
    RelationSchema,
    Document,
    QAItem,
    ReasoningPath,
    PathHop,
    SubgoalEstimate,
    MergeAction,
    MergeKind,
    MergeReport,
    MentionAnalysis,
    RoutePlan,
    edge_id_for,
)
from tempograph.types.exceptions import (
    IntervalException,
    TimestampComparisonException,
    ValidationException,
)


def test_timestamp_parsing():
    assert Timestamp.from_iso("1970-01-02") == Timestamp(86400)
    assert Timestamp.from_iso("2020") == Timestamp.from_iso("2020-01-01")
    assert Timestamp.from_iso("2020-01-01T00:00:00Z") == Timestamp.from_iso("2020-01-01")
    for text in (None, "", "?", "unknown"):
        assert Timestamp.from_iso(text) is UNKNOWN
    with pytest.raises(ValidationException):
        Timestamp.from_iso("yesterday")


def test_timestamp_rendering():
    assert Timestamp.from_iso("2019-05-03").render() == "2019-05-03"
    assert Timestamp.from_iso("2019-05-03T10:00:00Z").render() == "2019-05-03T10:00:00Z"
    assert UNKNOWN.render() == "unknown time"
    assert UNKNOWN.to_iso() is None


def test_unknown_timestamps_do_not_order():
    known = Timestamp(0)
    assert UNKNOWN == Timestamp(None)
    assert UNKNOWN != known
    with pytest.raises(TimestampComparisonException):
        _ = UNKNOWN < known
    with pytest.raises(TimestampComparisonException):
        _ = known - UNKNOWN
    assert Timestamp(10) - Timestamp(4) == 6


def test_interval_validation():
    TemporalInterval.from_iso("2020-01-01", "2020-01-01")
    TemporalInterval.from_iso("2020-01-01", None)
    assert TemporalInterval.always().unknown
    with pytest.raises(IntervalException):
        TemporalInterval.from_iso("2021-01-01", "2020-01-01")


def test_interval_key_orders_unknown_first():
    intervals = [
        TemporalInterval.from_iso("2020", "2021"),
        TemporalInterval.always(),
        TemporalInterval.from_iso(None, "2019"),
    ]
    ordered = sorted(intervals, key=lambda i: i.key())
    assert ordered[0].unknown
    assert ordered[-1].start == Timestamp.from_iso("2020")


def test_property_map_is_immutable_and_sorted():
    props = PropertyMap({"b": "2", "a": "1"})
    assert list(props) == ["a", "b"]
    updated = props.with_value("c", "3")
    assert "c" not in props
    assert updated["c"] == "3"
    assert "a" not in updated.without("a")
    assert dict(updated.plain_items()) == {"a": "1", "b": "2", "c": "3"}


def test_property_map_slots():
    slot = (PropertyCandidate("1990-01-01", 0.7, "doc-1", contexts=("doc-1",)),)
    props = PropertyMap({"birthday": slot, "nickname": "Ace"})
    assert props.is_slot("birthday")
    assert not props.is_slot("nickname")
    assert props.slot("missing") == ()
    with pytest.raises(ValidationException):
        props.slot("nickname")
    assert PropertyMap.from_dict(props.to_dict()) == props
    assert "1990-01-01 (70%" in props.render()


def test_candidate_validation():
    with pytest.raises(ValidationException):
        PropertyCandidate("x", confidence=1.5)
    with pytest.raises(ValidationException):
        PropertyCandidate("x", source_weight=0.0)
    with pytest.raises(ValidationException):
        PropertyCandidate("x", frequency_count=0)


def test_edge_ids_derive_from_identity():
    interval = TemporalInterval.from_iso("2019-01-01", "2019-12-31")
    a = Edge.create("v-1", "played for", "v-2", interval)
    b = Edge.create("v-1", "played for", "v-2", interval)
    c = Edge.create("v-1", "played for", "v-2")
    assert a.id == b.id == edge_id_for("v-1", "played for", "v-2", interval)
    assert a.id != c.id
    assert a.id.startswith("e-")


def test_edges_reject_candidate_sets():
    with pytest.raises(ValidationException):
        Edge.create(
            "v-1",
            "played for",
            "v-2",
            properties=PropertyMap({"x": (PropertyCandidate("y"),)}),
        )


def test_entity_round_trip_and_render():
    entity = Entity("v-1", "Player", "Marco Rossi", "striker", PropertyMap({"k": "v"}))
    assert Entity.from_dict(entity.to_dict()) == entity
    assert entity.render() == '(Player: Marco Rossi, desc: "striker", props: {k: v})'
    with pytest.raises(ValidationException):
        Entity("", "Player", "x")


def test_schema_rendering():
    schema = RelationSchema("Player", "birthday", "Date", exclusive=True)
    assert str(schema) == "Player -[birthday]-> Date"
    assert RelationSchema.from_dict(schema.to_dict()) == schema


def test_document_and_qa_validation():
    with pytest.raises(ValidationException):
        Document(id="d", text="x", source_weight=1.5)
    with pytest.raises(ValidationException):
        QAItem("q-1", "Which team?", ())
    item = QAItem("q-1", "Which team?", ["Lions"], Timestamp.from_iso("2024-12-31"))
    assert item.gold_answers == ("Lions",)
    assert QAItem.from_dict(item.to_dict()) == item


def test_subgoal_estimate_psi():
    assert SubgoalEstimate(2, 3, 2).psi == 36
    assert SubgoalEstimate().psi == 1
    with pytest.raises(ValidationException):
        SubgoalEstimate(0, 1, 1)


def test_reasoning_path_identity():
    path = ReasoningPath("v-a", 0.5)
    assert path.terminal == "v-a"
    hop = PathHop("r", 0.5, "v-b", 0.25, edge_id="e-1")
    extended = path.extend(hop)
    assert extended.terminal == "v-b"
    assert extended.entities == ("v-a", "v-b")
    assert extended.key == ("v-a", "e-1")
    assert extended.length == 1


def test_merge_action_mapping_invariant():
    MergeAction(MergeKind.MapInsert, "played for")
    with pytest.raises(ValidationException):
        MergeAction(MergeKind.MapMerge)
    with pytest.raises(ValidationException):
        MergeAction(MergeKind.Insert, "played for")
    assert [k.rule for k in MergeKind] == [1, 2, 3, 4, 5]


def test_merge_report_counts_records():
    report = MergeReport()
    assert report.empty
    report.record("entity", outcome="inserted")
    report.record("entity", outcome="aligned", conflicts=2)
    report.record("edge", action="Insert", conflicts=0)
    report.record("edge", action="Skip", conflicts=0)
    summary = report.summary()
    assert summary["entities_inserted"] == 1
    assert summary["entities_aligned"] == 1
    assert summary["edges"]["Insert"] == 1
    assert summary["edges"]["MapInsert"] == 0
    assert summary["property_conflicts_recorded"] == 2
    assert not report.empty


def test_oracle_result_validation():
    with pytest.raises(ValidationException):
        MentionAnalysis(["a", "b"], [""])
    with pytest.raises(ValidationException):
        RoutePlan("", [])
    with pytest.raises(ValidationException):
        RoutePlan("", [[]])
    plan = RoutePlan("why", [["a", "b"]])
    assert plan.routes == (("a", "b"),)
