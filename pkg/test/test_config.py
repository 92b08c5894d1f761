import json

import pytest

from tempograph.config import (
    EvalConfig,
    EvolutionConfig,
    OracleConfig,
    ReasonerConfig,
    TempographConfig,
)
from tempograph.types.exceptions import ConfigException


def test_defaults():
    cfg = TempographConfig()
    assert cfg.oracle.backend == "deterministic"
    assert cfg.evolution.gamma == -0.05
    assert cfg.evolution.context_cap == 16
    assert cfg.reasoner.dedup_threshold == 0.95
    assert cfg.eval.runs == 5
    assert TempographConfig.from_file(None) == cfg


def test_sections_from_dict():
    cfg = TempographConfig.from_dict(
        {"evolution": {"theta_entity": 1, "fail_fast": True}, "eval": {"jobs": 4}}
    )
    assert cfg.evolution.theta_entity == 1.0
    assert isinstance(cfg.evolution.theta_entity, float)
    assert cfg.evolution.fail_fast
    assert cfg.eval.jobs == 4
    assert cfg.reasoner == ReasonerConfig()
    assert TempographConfig.from_dict(cfg.to_dict()) == cfg


@pytest.mark.parametrize(
    "data,section,field",
    [
        ({"evolution": {"theta": 0.5}}, "evolution", "theta"),
        ({"reasoner": {"n_routes": 2.5}}, "reasoner", "n_routes"),
        ({"reasoner": {"n_routes": True}}, "reasoner", "n_routes"),
        ({"evolution": {"delta": 1.5}}, "evolution", "delta"),
        ({"eval": {"runs": 0}}, "eval", "runs"),
        ({"oracle": {"backend": "remote"}}, "oracle", "endpoint_url"),
        ({"oracle": {"backend": "llm"}}, "oracle", "backend"),
        ({"evolution": []}, "evolution", None),
        ({"judge": {}}, "judge", None),
    ],
)
def test_invalid_values_name_the_field(data, section, field):
    with pytest.raises(ConfigException) as info:
        TempographConfig.from_dict(data)
    assert info.value.section == section
    assert info.value.field == field


def test_overrides_ignore_unset_flags():
    cfg = TempographConfig(eval=EvalConfig(runs=3, seed=9))
    updated = cfg.with_overrides(eval={"runs": 1, "seed": None, "jobs": None})
    assert updated.eval == EvalConfig(runs=1, seed=9)
    assert cfg.eval.runs == 3
    with pytest.raises(ConfigException):
        cfg.with_overrides(eval={"runs": 0})
    with pytest.raises(ConfigException):
        cfg.with_overrides(eval={"repeats": 2})
    with pytest.raises(ConfigException):
        cfg.with_overrides(judge={"runs": 2})


def test_from_file(tmp_path):
    path = tmp_path / "config.json"
    path.write_text(json.dumps({"reasoner": {"beam_width": 2}}), encoding="utf-8")
    assert TempographConfig.from_file(str(path)).reasoner.beam_width == 2

    path.write_text("{\n  nope", encoding="utf-8")
    with pytest.raises(ConfigException) as info:
        TempographConfig.from_file(str(path))
    assert "line 2" in info.value.msg

    with pytest.raises(ConfigException):
        TempographConfig.from_file(str(tmp_path / "missing.json"))


def test_api_key_is_not_part_of_the_config(monkeypatch):
    monkeypatch.setenv("TEMPOGRAPH_TEST_KEY", "secret-key")
    cfg = TempographConfig(
        oracle=OracleConfig(
            backend="remote",
            endpoint_url="http://llm.invalid/v1",
            model_name="judge",
            api_key_env="TEMPOGRAPH_TEST_KEY",
        )
    )
    dumped = json.dumps(cfg.to_dict())
    assert "TEMPOGRAPH_TEST_KEY" in dumped
    assert "secret-key" not in dumped


def test_depth_zero_is_allowed():
    assert ReasonerConfig(max_depth=0).max_depth == 0
    with pytest.raises(ConfigException):
        EvolutionConfig(align_topk=0)
