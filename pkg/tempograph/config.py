"""
Tempograph (c) 2026 The Tempograph Authors

SPDX-License-Identifier: MIT
"""

import json
from dataclasses import dataclass, field, fields, asdict, replace
from typing import Any, Dict, Optional

from .types.exceptions import ConfigException


@dataclass(frozen=True, init=True)
class OracleConfig:
    backend: str = "deterministic"  # or "remote"
    endpoint_url: str = ""
    model_name: str = ""
    api_key_env: str = "OPENAI_API_KEY"
    temperature: float = 0.0
    max_retries: int = 3
    domain_label: str = "general"
    # transport
    timeout_s: float = 30.0
    max_in_flight: int = 4
    backoff_base_s: float = 1.0
    seed: int = 0
    # an empty embedding model keeps the offline hashing encoder
    embedding_model: str = ""
    embedding_dimension: int = 256
    embedding_cache: str = ""

    def __post_init__(self):
        self.validate()

    def validate(self):
        if self.backend not in ("deterministic", "remote"):
            raise ConfigException(
                "backend must be deterministic or remote", "oracle", "backend"
            )
        if self.backend == "remote":
            if not self.endpoint_url:
                raise ConfigException(
                    "remote backend needs an endpoint", "oracle", "endpoint_url"
                )
            if not self.model_name:
                raise ConfigException(
                    "remote backend needs a model", "oracle", "model_name"
                )
        _check(self.temperature >= 0, "oracle", "temperature", ">= 0")
        _check(self.max_retries >= 1, "oracle", "max_retries", ">= 1")
        _check(self.max_in_flight >= 1, "oracle", "max_in_flight", ">= 1")
        _check(self.timeout_s > 0, "oracle", "timeout_s", "> 0")
        _check(self.backoff_base_s >= 0, "oracle", "backoff_base_s", ">= 0")
        _check(
            self.embedding_dimension >= 1, "oracle", "embedding_dimension", ">= 1"
        )


@dataclass(frozen=True, init=True)
class EvolutionConfig:
    theta_entity: float = 0.5
    theta_relation: float = 0.5
    gamma: float = -0.05  # per day, negative so confidence decays with staleness
    delta: float = 0.7
    align_topk: int = 5
    context_cap: int = 16
    fail_fast: bool = False

    def __post_init__(self):
        self.validate()

    def validate(self):
        _check(0 <= self.theta_entity <= 1, "evolution", "theta_entity", "in [0, 1]")
        _check(
            0 <= self.theta_relation <= 1, "evolution", "theta_relation", "in [0, 1]"
        )
        _check(0 <= self.delta <= 1, "evolution", "delta", "in [0, 1]")
        _check(self.align_topk >= 1, "evolution", "align_topk", ">= 1")
        _check(self.context_cap >= 1, "evolution", "context_cap", ">= 1")


@dataclass(frozen=True, init=True)
class ReasonerConfig:
    n_routes: int = 3
    k_candidates: int = 5
    k_anchors: int = 2
    beam_width: int = 5
    max_depth: int = 4
    default_hops: int = 3
    consensus_min: int = 2
    oracle_budget: int = 0  # 0 means unlimited
    dedup_threshold: float = 0.95

    def __post_init__(self):
        self.validate()

    def validate(self):
        for name in (
            "n_routes",
            "k_candidates",
            "k_anchors",
            "beam_width",
            "default_hops",
            "consensus_min",
        ):
            _check(getattr(self, name) >= 1, "reasoner", name, ">= 1")
        # a depth of zero is allowed: the anchors are then the only paths
        _check(self.max_depth >= 0, "reasoner", "max_depth", ">= 0")
        _check(self.oracle_budget >= 0, "reasoner", "oracle_budget", ">= 0")
        _check(
            0 <= self.dedup_threshold <= 1, "reasoner", "dedup_threshold", "in [0, 1]"
        )


@dataclass(frozen=True, init=True)
class EvalConfig:
    runs: int = 5
    seed: int = 0
    jobs: int = 1

    def __post_init__(self):
        self.validate()

    def validate(self):
        _check(self.runs >= 1, "eval", "runs", ">= 1")
        _check(self.jobs >= 1, "eval", "jobs", ">= 1")


SECTIONS = {
    "oracle": OracleConfig,
    "evolution": EvolutionConfig,
    "reasoner": ReasonerConfig,
    "eval": EvalConfig,
}


@dataclass(frozen=True, init=True)
class TempographConfig:
    oracle: OracleConfig = field(default_factory=OracleConfig)
    evolution: EvolutionConfig = field(default_factory=EvolutionConfig)
    reasoner: ReasonerConfig = field(default_factory=ReasonerConfig)
    eval: EvalConfig = field(default_factory=EvalConfig)

    def __post_init__(self):
        for name in SECTIONS:
            getattr(self, name).validate()

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "TempographConfig":
        if not isinstance(data, dict):
            raise ConfigException("configuration must be a JSON object", "<root>")
        sections = {}
        for name, section in data.items():
            if name not in SECTIONS:
                raise ConfigException("unknown section", name)
            sections[name] = _build_section(name, section)
        return cls(**sections)

    @classmethod
    def from_file(cls, path: Optional[str]) -> "TempographConfig":
        """Load a JSON configuration file, ``None`` gives the defaults."""
        if path is None:
            return cls()
        try:
            with open(path, "r", encoding="utf-8") as f:
                data = json.load(f)
        except OSError as ex:
            raise ConfigException("cannot read config file: {}".format(ex), path)
        except json.JSONDecodeError as ex:
            raise ConfigException(
                "invalid JSON at line {}: {}".format(ex.lineno, ex.msg), path
            )
        return cls.from_dict(data)

    def with_overrides(self, **sections: Dict[str, Any]) -> "TempographConfig":
        """
        Return a copy with single fields replaced, e.g.
        ``cfg.with_overrides(eval={"runs": 3, "seed": None})``. ``None`` values
        are ignored so unset command line flags keep the file values.
        """
        updated = {}
        for name, values in sections.items():
            if name not in SECTIONS:
                raise ConfigException("unknown section", name)
            changes = {k: v for k, v in values.items() if v is not None}
            known = {f.name for f in fields(SECTIONS[name])}
            for key in changes:
                if key not in known:
                    raise ConfigException("unknown field", name, key)
            updated[name] = replace(getattr(self, name), **changes)
        return replace(self, **updated)

    def to_dict(self) -> Dict[str, Any]:
        return {name: asdict(getattr(self, name)) for name in SECTIONS}


def _build_section(name: str, values: Any):
    section_cls = SECTIONS[name]
    if not isinstance(values, dict):
        raise ConfigException("section must be a JSON object", name)
    defaults = section_cls()
    kwargs = {}
    for f in fields(section_cls):
        if f.name not in values:
            continue
        value = values[f.name]
        expected = type(getattr(defaults, f.name))
        if expected is float and isinstance(value, int) and not isinstance(value, bool):
            value = float(value)
        if not isinstance(value, expected) or (
            expected is int and isinstance(value, bool)
        ):
            raise ConfigException(
                "expected {}, got {!r}".format(expected.__name__, value), name, f.name
            )
        kwargs[f.name] = value
    unknown = set(values) - {f.name for f in fields(section_cls)}
    if unknown:
        raise ConfigException("unknown field", name, sorted(unknown)[0])
    return section_cls(**kwargs)


def _check(ok: bool, section: str, name: str, expectation: str):
    if not ok:
        raise ConfigException("must be " + expectation, section, name)
