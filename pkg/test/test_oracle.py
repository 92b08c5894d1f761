import json

import pytest
import requests

from tempograph.config import OracleConfig
from tempograph.oracle import (
    BudgetedOracle,
    DeterministicOracle,
    FactRecord,
    RemoteOracle,
    extract_json_block,
    parse_fact_block,
    parse_fact_line,
    render_prompt,
    renormalize,
)
from tempograph.oracle.deterministic import (
    answer_target,
    extract_capitalized_mentions,
    extract_temporal_context,
    strip_labels,
)
from tempograph.remote import JsonHttpClient
from tempograph.types import CandidatePath, Document, TemporalInterval, UNKNOWN
from tempograph.types.exceptions import (
    OracleBudgetException,
    OracleFormatException,
    TransportException,
    ValidationException,
)


# ---- deterministic backend


def test_capitalized_mentions():
    assert extract_capitalized_mentions(
        "Which team has Marco Rossi played for in 2019?"
    ) == ["Marco Rossi"]
    assert extract_capitalized_mentions(
        "Who is Elena's coach, and did Elena play in Riverton?"
    ) == ["Elena", "Riverton"]
    assert extract_capitalized_mentions("which team won?") == []


def test_temporal_context():
    assert extract_temporal_context("Who played on 2019-05-03 or in 2020?") == "2019-05-03 2020"
    assert extract_temporal_context("no dates here") == ""


def test_mentions_carry_the_question_year():
    analysis = DeterministicOracle().extract_mentions(
        "Which team did Messi join in 2021?", UNKNOWN, ["Which team did Messi join in 2021?"]
    )
    assert analysis.mentions == ("Messi",)
    assert analysis.temporal_contexts == ("2021",)


def test_alignment_ignores_template_labels():
    assert strip_labels("type: Player | name: Marco Rossi | desc: ") == "Player  Marco Rossi"
    assert strip_labels("mention: Ratio 2:1 | time: 2019") == "Ratio 2:1  2019"
    oracle = DeterministicOracle()
    assert oracle.align_score(
        "type: Player | name: Marco Rossi | desc: ",
        "type: Player | name: Marco Rossi | desc: ",
    ) == pytest.approx(1.0)
    assert oracle.align_score(
        "type: City | name: Riverton | desc: ", "type: Team | name: Southside Hawks | desc: "
    ) < 0.5


def test_answer_target():
    assert answer_target("Which city is the team based in?") == "city"
    assert answer_target("What is the team's home?") == "team"
    assert answer_target("Who founded the club?") == "person"
    assert answer_target("Name the club") is None


def test_renormalize():
    assert renormalize({}) == {}
    assert renormalize({"a": -1.0, "b": 0.0}) == {"a": 0.5, "b": 0.5}
    scores = renormalize({"a": 3.0, "b": 1.0, "c": -2.0})
    assert scores == {"a": 0.75, "b": 0.25, "c": 0.0}


def test_deterministic_judge_prefers_confident_typed_paths():
    oracle = DeterministicOracle()
    paths = [
        CandidatePath("a", "Northside Lions", "Team", 0.9, hops=1),
        CandidatePath("b", "Riverton", "City", 0.2, hops=2),
        CandidatePath("c", "Ashford", "City", 0.4, hops=2),
        CandidatePath("d", "Calder", "City", 0.99, hops=0),
    ]
    question = "Which city is the team based in?"
    judgement = oracle.judge_answer(question, UNKNOWN, [question], paths)
    assert judgement.answered
    assert judgement.answer == "Ashford"
    assert not oracle.judge_answer(question, UNKNOWN, [question], paths[:1]).answered


def test_deterministic_scores_are_distributions():
    oracle = DeterministicOracle()
    scores = oracle.score_relations(
        "Which team did he play for?", ["Which team did he play for?"], {"played for": 2, "born in": 1}
    )
    assert set(scores) == {"played for", "born in"}
    assert abs(sum(scores.values()) - 1.0) < 1e-9
    assert scores["played for"] > scores["born in"]
    assert oracle.align_score("type: City | name: Riverton", "type: City | name: Riverton") == 1.0


def test_deterministic_extraction_reads_fact_lines():
    doc = Document(
        id="doc-1",
        text="Profile\nFACT|Player|Marco Rossi|played for|Team|Northside Lions|2019-01-01|2019-12-31|false\n"
        "FACT|Player|Marco Rossi|birthday|Date|1990-04-01|?|?|true",
    )
    partial = DeterministicOracle().extract_partial_kg(doc)
    assert [e.key for e in partial.entities] == ["Player:Marco Rossi", "Team:Northside Lions"]
    edge, birthday = partial.edges
    assert edge.target_key == "Team:Northside Lions"
    assert edge.interval == TemporalInterval.from_iso("2019-01-01", "2019-12-31")
    assert birthday.exclusive and birthday.target_key == ""
    assert birthday.object_value == "1990-04-01"


# ---- fact lines


def test_fact_line_round_trip():
    fact = FactRecord(
        "Team",
        "Northside Lions",
        "played against",
        "Team",
        "Redhill Hawks",
        TemporalInterval.from_iso("2019-05-03", "2019-05-03"),
    )
    line = fact.to_line()
    assert line == "FACT|Team|Northside Lions|played against|Team|Redhill Hawks|2019-05-03|2019-05-03|false"
    assert parse_fact_line(line) == fact


def test_malformed_fact_lines():
    with pytest.raises(OracleFormatException):
        parse_fact_line("FACT|a|b|c")
    with pytest.raises(OracleFormatException):
        parse_fact_line("FACT|T|s|r|T|o|?|?|maybe")
    with pytest.raises(OracleFormatException):
        parse_fact_line("FACT|T|s|r|T|o|2020-01-01|2019-01-01|false")
    assert parse_fact_block("no facts\njust prose") == []


# ---- remote backend


def test_extract_json_block():
    assert extract_json_block('Sure! {"a": "}", "b": [1, 2]} trailing') == {"a": "}", "b": [1, 2]}
    assert extract_json_block("list: [1, [2]] and {") == [1, [2]]
    with pytest.raises(OracleFormatException):
        extract_json_block("nothing to see")
    with pytest.raises(OracleFormatException):
        extract_json_block('{"open": 1')


def test_prompts_fill_every_slot():
    text = render_prompt(
        "route_planning", "sports", {"query": "Q?", "query time": "2024"}, n_routes=3
    )
    assert "Q?" in text and "<query>" not in text
    assert '{"reason": "...", "routes": [[' in text
    assert "{{" not in text and "}}" not in text
    with pytest.raises(ValidationException):
        render_prompt("route_planning", "sports", {"missing slot": "x"})


class FakeResponse:
    def __init__(self, payload, status=200):
        self.payload = payload
        self.status_code = status

    def raise_for_status(self):
        if self.status_code >= 400:
            raise requests.HTTPError(response=self)

    def json(self):
        if isinstance(self.payload, Exception):
            raise self.payload
        return self.payload


class FakeSession:
    """Replays scripted completions and records every request."""

    def __init__(self, contents):
        self.contents = list(contents)
        self.requests = []

    def post(self, url, json=None, headers=None, timeout=None):
        self.requests.append((url, json, headers))
        content = self.contents.pop(0)
        if isinstance(content, FakeResponse):
            return content
        return FakeResponse({"choices": [{"message": {"content": content}}]})


def remote_oracle(contents, retries=3):
    config = OracleConfig(
        backend="remote",
        endpoint_url="http://llm.invalid/v1",
        model_name="judge",
        max_retries=retries,
        api_key_env="TEMPOGRAPH_TEST_KEY",
    )
    session = FakeSession(contents)
    sleeps = []
    client = JsonHttpClient(config.endpoint_url, config.api_key_env, session=session)
    return RemoteOracle(config, client, sleep=sleeps.append), session, sleeps


def test_remote_retries_malformed_responses_with_backoff():
    oracle, session, sleeps = remote_oracle(
        ["no json", "still {broken", '{"reason": "r", "routes": [["a", "b"], ["c"]]}']
    )
    plan = oracle.plan_routes("Q?", UNKNOWN, 2)
    assert plan.routes == (("a", "b"), ("c",))
    assert sleeps == [1.0, 2.0]
    url, payload, _ = session.requests[0]
    assert url == "http://llm.invalid/v1/chat/completions"
    assert payload["model"] == "judge"


CARIBBEAN_ROUTES = [
    [
        "List all Caribbean countries",
        "Determine the country calling code for each country",
        "Identify the country with the smallest calling code",
    ],
    [
        "Identify Caribbean countries",
        "Retrieve their country calling codes",
        "Compare to find the smallest",
    ],
    [
        "Identify the smallest country calling code globally",
        "Filter by Caribbean countries",
        "Select the smallest among them",
    ],
    [
        "List all country calling codes worldwide",
        "Filter the calling codes by Caribbean countries",
        "Find the smallest one",
    ],
]


def test_remote_plans_routes_in_planner_order():
    question = "Which of the countries in the Caribbean has the smallest country calling code?"
    oracle, session, _ = remote_oracle(
        [json.dumps({"reason": "specific searches first", "routes": CARIBBEAN_ROUTES})]
    )
    plan = oracle.plan_routes(question, UNKNOWN, 4)
    assert len(plan.routes) == 4
    assert plan.routes[0] == tuple(CARIBBEAN_ROUTES[0])
    assert [list(r) for r in plan.routes] == CARIBBEAN_ROUTES
    prompt = json.dumps(session.requests[0][1])
    # once in the worked example, once as the query
    assert prompt.count(question) == 2
    assert "<query>" not in prompt


def test_remote_gives_up_after_max_retries():
    oracle, _, sleeps = remote_oracle(["nope", "nope", "nope"])
    with pytest.raises(OracleFormatException) as info:
        oracle.align_score("a", "b")
    assert info.value.attempts == 3
    assert sleeps == [1.0, 2.0]


def test_remote_transport_errors_are_retried():
    oracle, _, _ = remote_oracle(
        [FakeResponse({}, status=503), '{"score": 0.25}'], retries=2
    )
    assert oracle.align_score("a", "b") == 0.25

    oracle, _, _ = remote_oracle([FakeResponse({}, status=500)], retries=1)
    with pytest.raises(TransportException):
        oracle.align_score("a", "b")


def test_remote_clamps_and_renormalises():
    oracle, _, _ = remote_oracle(
        [json.dumps({"reason": "r", "relevant_entities": {"ent_0": 3.0, "ent_1": -1, "ent_9": 1}})]
    )
    scores = oracle.score_entities("Q?", UNKNOWN, ["Q?"], ["x", "y"]).scores
    assert scores == {"ent_0": 1.0, "ent_1": 0.0}


def test_remote_mentions_and_judgement():
    oracle, _, _ = remote_oracle(
        [
            '[{"entity": "Marco Rossi", "time": "2019"}, "Riverton"]',
            '{"answered": "true", "answer": "Riverton"}',
        ]
    )
    mentions = oracle.extract_mentions("Where did Marco Rossi play in 2019?", UNKNOWN, ["q"])
    assert mentions.pairs() == [("Marco Rossi", "2019"), ("Riverton", "2019")]
    judgement = oracle.judge_answer(
        "Q?", UNKNOWN, ["Q?"], [CandidatePath("t", "Riverton", "City", 0.5, 1)]
    )
    assert judgement.answered and judgement.answer == "Riverton"


def test_remote_extraction_builds_partial_graph():
    facts = {
        "facts": [
            {
                "subject_type": "Player",
                "subject": "Marco Rossi",
                "relation": "birthday",
                "object_type": "Date",
                "object": "1990-04-01",
                "exclusive": True,
            }
        ]
    }
    oracle, _, _ = remote_oracle([json.dumps(facts)])
    partial = oracle.extract_partial_kg(Document(id="d", text="Marco was born..."))
    assert partial.edges[0].exclusive
    assert partial.entities[0].name == "Marco Rossi"


def test_api_key_never_reaches_logs(monkeypatch, caplog):
    monkeypatch.setenv("TEMPOGRAPH_TEST_KEY", "sk-secret")
    oracle, session, _ = remote_oracle(['{"score": 1}'])
    with caplog.at_level("DEBUG", logger="tempograph"):
        oracle.align_score("a", "b")
    assert session.requests[0][2]["Authorization"] == "Bearer sk-secret"
    assert "sk-secret" not in caplog.text


# ---- budget


def test_budget_counts_and_stops():
    oracle = BudgetedOracle(DeterministicOracle(), budget=2)
    oracle.align_score("a", "a")
    oracle.align_score("a", "b")
    assert oracle.calls == 2
    with pytest.raises(OracleBudgetException):
        oracle.align_score("a", "c")

    unlimited = BudgetedOracle(DeterministicOracle())
    for _ in range(10):
        unlimited.align_score("a", "a")
    assert unlimited.calls == 10
