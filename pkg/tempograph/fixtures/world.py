"""
Tempograph (c) 2026 The Tempograph Authors

SPDX-License-Identifier: MIT

Synthetic worlds: a ground truth graph, a degraded copy missing some of its
facts, a corpus reporting the missing facts and a QA set whose answers only
the complete graph supports.
"""

import itertools
import json
import logging
import math
import os
import random
from dataclasses import dataclass, field, replace
from typing import Any, Dict, List, Mapping, Optional, Sequence, Tuple

from ..config import EvalConfig, EvolutionConfig, ReasonerConfig, TempographConfig
from ..embed import create_encoder
from ..eval import evaluate_item, dataset_lines
from ..evolve import Evolver, corpus_clock, merge_exclusive_property
from ..graph import GraphStore, snapshot_save
from ..helpers import dump_json_line
from ..oracle import FactRecord, create_oracle
from ..reason import Reasoner
from ..types import (
    Document,
    Edge,
    Entity,
    MergeReport,
    Observation,
    QAItem,
    RelationSchema,
    TemporalInterval,
    Timestamp,
    edge_id_for,
    entity_id_for,
)
from ..types.exceptions import WorldSpecException
from .vocab import VOCABULARIES, RelationSpec, Vocabulary

logger = logging.getLogger(__name__)

SECONDS_PER_DAY = 86400
MAX_ATTEMPTS = 16
RESEED_STRIDE = 7919
REFERENCE_CONTEXT = "reference"
NOISE_SUPPORT = 6
NOISE_CONTRADICT = 3
MIN_PER_TYPE = 2

WORLD_CONFIG = TempographConfig(
    evolution=EvolutionConfig(theta_entity=0.9),
    reasoner=ReasonerConfig(max_depth=3),
    eval=EvalConfig(runs=1),
)


@dataclass(frozen=True)
class WorldSpec:
    seed: int = 7
    n_entities: int = 20
    n_relations: int = 4
    exclusive_fraction: float = 0.25
    time_span: Tuple[Timestamp, Timestamp] = (
        Timestamp.from_iso("2015-01-01"),
        Timestamp.from_iso("2024-12-31"),
    )
    removal_fraction: float = 0.4
    noise_rate: float = 0.2
    """Share of removed exclusive facts that noise documents contradict"""
    domain: str = "sports"
    n_questions: int = 6

    def __post_init__(self):
        if self.domain not in VOCABULARIES:
            raise WorldSpecException(
                "unknown domain, pick one of " + ", ".join(sorted(VOCABULARIES)),
                self.domain,
            )
        vocab = VOCABULARIES[self.domain]
        minimum = MIN_PER_TYPE * len(vocab.entity_types)
        if self.n_entities < minimum:
            raise WorldSpecException(
                "a {} world needs at least {} entities".format(self.domain, minimum),
                self.n_entities,
            )
        if not (1 <= self.n_relations <= len(vocab.relations)):
            raise WorldSpecException(
                "n_relations must lie in [1, {}]".format(len(vocab.relations)),
                self.n_relations,
            )
        if not (0.0 <= self.exclusive_fraction <= 1.0):
            raise WorldSpecException(
                "exclusive_fraction must lie in [0, 1]", self.exclusive_fraction
            )
        if not (0.0 <= self.removal_fraction < 1.0):
            raise WorldSpecException(
                "removal_fraction must lie in [0, 1)", self.removal_fraction
            )
        if not (0.0 <= self.noise_rate < 1.0):
            raise WorldSpecException("noise_rate must lie in [0, 1)", self.noise_rate)
        start, end = self.time_span
        if not (start.known and end.known) or start > end:
            raise WorldSpecException("time_span must be two ordered dates", self.time_span)
        if self.n_questions < 1:
            raise WorldSpecException("n_questions must be >= 1", self.n_questions)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "seed": self.seed,
            "n_entities": self.n_entities,
            "n_relations": self.n_relations,
            "exclusive_fraction": self.exclusive_fraction,
            "time_span": [self.time_span[0].render(), self.time_span[1].render()],
            "removal_fraction": self.removal_fraction,
            "noise_rate": self.noise_rate,
            "domain": self.domain,
            "n_questions": self.n_questions,
        }

    @classmethod
    def from_dict(cls, data: Mapping[str, Any]) -> "WorldSpec":
        if not isinstance(data, Mapping):
            raise WorldSpecException("world spec must be a JSON object", data)
        known = set(cls.__dataclass_fields__)
        unknown = set(data) - known
        if unknown:
            raise WorldSpecException("unknown world spec field", sorted(unknown)[0])
        values = dict(data)
        if "time_span" in values:
            span = values["time_span"]
            if not isinstance(span, (list, tuple)) or len(span) != 2:
                raise WorldSpecException("time_span must be a pair of dates", span)
            try:
                values["time_span"] = (
                    Timestamp.from_iso(span[0]),
                    Timestamp.from_iso(span[1]),
                )
            except (AttributeError, TypeError) as ex:
                raise WorldSpecException("time_span must be a pair of dates", str(ex))
        try:
            return cls(**values)
        except TypeError as ex:
            raise WorldSpecException("malformed world spec", str(ex))

    @classmethod
    def from_file(cls, path: str) -> "WorldSpec":
        try:
            with open(path, "r", encoding="utf-8") as f:
                data = json.load(f)
        except (OSError, json.JSONDecodeError) as ex:
            raise WorldSpecException("cannot read world spec", str(ex))
        return cls.from_dict(data)


@dataclass
class World:
    spec: WorldSpec
    truth_store: GraphStore
    degraded_store: GraphStore
    corpus: List[Document]
    qa_set: List[QAItem]
    config: TempographConfig = field(default_factory=lambda: WORLD_CONFIG)
    removed_facts: List[FactRecord] = field(default_factory=list)
    dependent_items: List[str] = field(default_factory=list)
    """Ids of QA items whose supporting facts were removed"""
    recovery_items: List[str] = field(default_factory=list)
    """Dependent items the degraded graph answers wrongly"""
    accuracy: Dict[str, float] = field(default_factory=dict)
    attempt: int = 0

    def description(self) -> Dict[str, Any]:
        return {
            "spec": self.spec.to_dict(),
            "attempt": self.attempt,
            "removed_facts": [f.to_line() for f in self.removed_facts],
            "dependent_items": list(self.dependent_items),
            "recovery_items": list(self.recovery_items),
            "accuracy": dict(self.accuracy),
        }


# ---- building blocks


def _round_half_up(value: float) -> int:
    return int(math.floor(value + 0.5))


def choose_relations(vocab: Vocabulary, spec: WorldSpec) -> List[RelationSpec]:
    """
    The first relations of the vocabulary, with
    ``round(exclusive_fraction * n_relations)`` exclusive ones. At least one
    relation must be an edge relation.
    """
    n_exclusive = min(
        len(vocab.exclusive_relations),
        _round_half_up(spec.exclusive_fraction * spec.n_relations),
    )
    n_edges = spec.n_relations - n_exclusive
    if not (1 <= n_edges <= len(vocab.edge_relations)):
        raise WorldSpecException(
            "cannot pick {} edge relations from the {} vocabulary".format(
                n_edges, vocab.name
            ),
            spec.n_relations,
        )
    return list(vocab.edge_relations[:n_edges]) + list(
        vocab.exclusive_relations[:n_exclusive]
    )


def entity_counts(vocab: Vocabulary, n_entities: int) -> Dict[str, int]:
    counts = dict()
    for type_name, share in vocab.entity_types[:-1]:
        counts[type_name] = max(MIN_PER_TYPE, _round_half_up(share * n_entities))
    rest = n_entities - sum(counts.values())
    if rest < MIN_PER_TYPE:
        raise WorldSpecException("too few entities for every type", n_entities)
    counts[vocab.entity_types[-1][0]] = rest
    return counts


def entity_names(
    vocab: Vocabulary, counts: Dict[str, int], rng: random.Random
) -> Dict[str, List[str]]:
    names = dict()
    for type_name, count in counts.items():
        pool = [" ".join(parts) for parts in itertools.product(*vocab.name_parts[type_name])]
        if count > len(pool):
            raise WorldSpecException(
                "not enough {} names for {} entities".format(type_name, count),
                len(pool),
            )
        names[type_name] = sorted(rng.sample(pool, count))
    return names


def _day(ts: Timestamp, days: int) -> Timestamp:
    return Timestamp(ts.value + days * SECONDS_PER_DAY)


def _year_interval(year: int) -> TemporalInterval:
    return TemporalInterval.from_iso("{:04d}-01-01".format(year), "{:04d}-12-31".format(year))


def _random_date(rng: random.Random, first_year: int, last_year: int) -> Timestamp:
    start = Timestamp.from_iso("{:04d}-01-01".format(first_year))
    end = Timestamp.from_iso("{:04d}-12-31".format(last_year))
    return _day(start, rng.randrange((end - start) // SECONDS_PER_DAY + 1))


def exclusive_value(relation: RelationSpec, spec: WorldSpec, rng: random.Random) -> str:
    if relation.object_type == "Year":
        return str(rng.randint(1880, 1990))
    if relation.subject_type in ("Player", "Person"):
        return _random_date(rng, 1965, 2000).render()
    first, last = _years(spec)
    return _random_date(rng, first, last).render()


def contradicting_value(value: str, rng: random.Random) -> str:
    shift = rng.choice((-3, -2, -1, 1, 2, 3))
    if len(value) == 4:
        return str(int(value) + shift)
    return "{:04d}{}".format(int(value[:4]) + shift, value[4:].replace("-02-29", "-02-28"))


def _years(spec: WorldSpec) -> Tuple[int, int]:
    return int(spec.time_span[0].render()[:4]), int(spec.time_span[1].render()[:4])


def generate_facts(
    vocab: Vocabulary,
    relations: Sequence[RelationSpec],
    names: Dict[str, List[str]],
    spec: WorldSpec,
    rng: random.Random,
) -> List[FactRecord]:
    """
    Year facts give every subject one to three stints in distinct years, date
    facts two events on distinct dates, timeless facts exactly one object.
    Exclusive facts give every subject one value.
    """
    first, last = _years(spec)
    years = list(range(first, last + 1))
    facts: List[FactRecord] = []
    for relation in relations:
        for subject in names[relation.subject_type]:
            if relation.exclusive:
                facts.append(
                    FactRecord(
                        relation.subject_type,
                        subject,
                        relation.relation,
                        relation.object_type,
                        exclusive_value(relation, spec, rng),
                        exclusive=True,
                    )
                )
                continue
            objects = [o for o in names[relation.object_type] if o != subject]
            if relation.when == "year":
                count = rng.randint(1, min(3, len(years)))
                start = rng.randint(0, len(years) - count)
                windows = [_year_interval(y) for y in years[start : start + count]]
            elif relation.when == "date":
                days = set()
                while len(days) < 2:
                    days.add(_random_date(rng, first, last).value)
                windows = [
                    TemporalInterval(Timestamp(d), Timestamp(d)) for d in sorted(days)
                ]
            else:
                windows = [TemporalInterval.always()]
            for window in windows:
                facts.append(
                    FactRecord(
                        relation.subject_type,
                        subject,
                        relation.relation,
                        relation.object_type,
                        rng.choice(objects),
                        interval=window,
                    )
                )
    return facts


def build_store(
    relations: Sequence[RelationSpec],
    names: Dict[str, List[str]],
    facts: Sequence[FactRecord],
    config: EvolutionConfig,
    now: Timestamp,
) -> GraphStore:
    store = GraphStore()
    with store.batch():
        for relation in relations:
            store.register_schema(
                RelationSchema(
                    relation.subject_type,
                    relation.relation,
                    relation.object_type,
                    relation.exclusive,
                )
            )
        for type_name in sorted(names):
            for name in names[type_name]:
                store.upsert_entity(Entity(entity_id_for(type_name, name), type_name, name))
        for fact in facts:
            subject = entity_id_for(fact.subject_type, fact.subject)
            if fact.exclusive:
                entity = store.get_entity(subject)
                slot = merge_exclusive_property(
                    entity.properties.slot(fact.relation),
                    Observation(fact.object, REFERENCE_CONTEXT, now),
                    config,
                    now,
                )
                store.upsert_entity(
                    replace(
                        entity,
                        properties=entity.properties.with_value(fact.relation, slot),
                    )
                )
            else:
                store.insert_edge(
                    Edge.create(
                        subject,
                        fact.relation,
                        entity_id_for(fact.object_type, fact.object),
                        fact.interval,
                    )
                )
    return store


def fact_edge_id(fact: FactRecord) -> str:
    return edge_id_for(
        entity_id_for(fact.subject_type, fact.subject),
        fact.relation,
        entity_id_for(fact.object_type, fact.object),
        fact.interval,
    )


def degrade(truth: GraphStore, removed: Sequence[FactRecord]) -> GraphStore:
    """A copy of ``truth`` without the removed edges and exclusive values."""
    degraded = truth.copy()
    if not removed:
        return degraded
    with degraded.batch():
        for fact in removed:
            if fact.exclusive:
                entity = degraded.get_entity(entity_id_for(fact.subject_type, fact.subject))
                degraded.upsert_entity(
                    replace(entity, properties=entity.properties.without(fact.relation))
                )
            else:
                degraded.remove_edge(fact_edge_id(fact))
    return degraded


def _sentence(fact: FactRecord) -> str:
    if fact.exclusive or fact.interval.unknown:
        return "{} {} {}.".format(fact.subject, fact.relation, fact.object)
    return "{} {} {} from {} to {}.".format(
        fact.subject,
        fact.relation,
        fact.object,
        fact.interval.start.render(),
        fact.interval.end.render(),
    )


def _document(doc_id: str, title: str, facts: Sequence[FactRecord], published: Timestamp) -> Document:
    lines = [title] + [_sentence(f) for f in facts] + [f.to_line() for f in facts]
    return Document(id=doc_id, title=title, text="\n".join(lines), published_at=published)


def write_corpus(
    facts: Sequence[FactRecord],
    removed: Sequence[FactRecord],
    spec: WorldSpec,
    rng: random.Random,
) -> List[Document]:
    """
    One profile document per subject with removed facts, listing every fact
    of that subject. Removed exclusive facts are contradicted by noise with
    probability ``noise_rate``: six more documents repeat the true value and
    three report a wrong one.
    """
    published = spec.time_span[1]
    subjects = sorted({(f.subject_type, f.subject) for f in removed})
    documents = []

    def next_id() -> str:
        return "doc-{:03d}".format(len(documents) + 1)

    for subject_type, subject in subjects:
        about = [f for f in facts if (f.subject_type, f.subject) == (subject_type, subject)]
        documents.append(
            _document(next_id(), "{} profile".format(subject), about, published)
        )
    for fact in removed:
        if not fact.exclusive:
            continue
        if rng.random() >= spec.noise_rate:
            continue
        wrong = replace(fact, object=contradicting_value(fact.object, rng))
        for _ in range(NOISE_SUPPORT):
            documents.append(
                _document(next_id(), "{} report".format(fact.subject), [fact], published)
            )
        for _ in range(NOISE_CONTRADICT):
            documents.append(
                _document(next_id(), "{} rumour".format(fact.subject), [wrong], published)
            )
    return documents


# ---- questions


@dataclass(frozen=True)
class QuestionCandidate:
    question: str
    answer: str
    facts: Tuple[FactRecord, ...]


def _when(fact: FactRecord, relation: RelationSpec) -> str:
    if relation.when == "year":
        return fact.interval.start.render()[:4]
    if relation.when == "date":
        return fact.interval.start.render()
    return ""


def question_candidates(
    vocab: Vocabulary, relations: Sequence[RelationSpec], facts: Sequence[FactRecord]
) -> List[QuestionCandidate]:
    """
    Every template instance with exactly one answer: the first hop is pinned
    by its time qualifier and every later hop must be functional.
    """
    by_name = {r.relation: r for r in relations}
    outgoing: Dict[Tuple[str, str], List[FactRecord]] = dict()
    for fact in facts:
        if not fact.exclusive:
            outgoing.setdefault((fact.subject, fact.relation), []).append(fact)

    candidates = []
    for template in vocab.templates:
        if any(r not in by_name for r in template.chain):
            continue
        first = by_name[template.chain[0]]
        for fact in facts:
            if fact.exclusive or fact.relation != first.relation:
                continue
            when = _when(fact, first)
            siblings = [
                f
                for f in outgoing[(fact.subject, fact.relation)]
                if _when(f, first) == when
            ]
            if len(siblings) != 1:
                continue
            chain = [fact]
            for relation in template.chain[1:]:
                nxt = outgoing.get((chain[-1].object, relation), [])
                if len(nxt) != 1:
                    break
                chain.append(nxt[0])
            if len(chain) != len(template.chain):
                continue
            candidates.append(
                QuestionCandidate(
                    template.text.format(subject=fact.subject, when=when),
                    chain[-1].object,
                    tuple(chain),
                )
            )
    return candidates


# ---- the deterministic stack the world is validated with


def world_reasoner(store: GraphStore, config: TempographConfig) -> Reasoner:
    encoder = create_encoder(config.oracle)
    return Reasoner(
        store, create_oracle(config.oracle, encoder), encoder, config.reasoner
    )


def evolve_store(
    store: GraphStore,
    corpus: Sequence[Document],
    config: TempographConfig,
    now: Optional[Timestamp] = None,
) -> Tuple[GraphStore, MergeReport]:
    """Apply a corpus to a copy of ``store``, clocked at the corpus' newest date."""
    evolved = store.copy()
    encoder = create_encoder(config.oracle)
    evolver = Evolver(
        evolved,
        create_oracle(config.oracle, encoder),
        encoder,
        config.evolution,
        now if now is not None else corpus_clock(corpus),
    )
    report = evolver.update_from_corpus(corpus)
    return evolved, report


def _accuracy(correct: Dict[str, bool], ids: Sequence[str]) -> float:
    if not ids:
        return 0.0
    return sum(1 for i in ids if correct[i]) / len(ids)


def _attempt(
    spec: WorldSpec, rng: random.Random, config: TempographConfig, attempt: int
) -> Optional[World]:
    vocab = VOCABULARIES[spec.domain]
    relations = choose_relations(vocab, spec)
    names = entity_names(vocab, entity_counts(vocab, spec.n_entities), rng)
    facts = generate_facts(vocab, relations, names, spec, rng)
    now = spec.time_span[1]
    truth = build_store(relations, names, facts, config.evolution, now)

    n_removed = _round_half_up(spec.removal_fraction * len(facts))
    removed_idx = sorted(rng.sample(range(len(facts)), n_removed))
    removed = [facts[i] for i in removed_idx]
    degraded = degrade(truth, removed)
    corpus = write_corpus(facts, removed, spec, rng)
    evolved, _ = evolve_store(degraded, corpus, config)

    stacks = {
        "truth": world_reasoner(truth, config),
        "degraded": world_reasoner(degraded, config),
        "evolved": world_reasoner(evolved, config),
    }
    query_time = spec.time_span[1]
    removed_set = set(removed)
    dependent: List[QAItem] = []
    others: List[QAItem] = []
    for n, candidate in enumerate(question_candidates(vocab, relations, facts)):
        item = QAItem(
            id="c-{:04d}".format(n),
            question=candidate.question,
            gold_answers=(candidate.answer,),
            query_time=query_time,
            domain=spec.domain,
        )
        if not evaluate_item(stacks["truth"], item, 0).correct:
            continue
        if any(f in removed_set for f in candidate.facts):
            dependent.append(item)
        else:
            others.append(item)

    if not dependent and not others:
        logger.debug("Attempt %d: no question is answerable from the truth", attempt)
        return None
    if removed and not dependent:
        logger.debug("Attempt %d: no answerable question uses a removed fact", attempt)
        return None

    chosen = dependent[: max(1, spec.n_questions // 3)]
    for item in others + dependent[len(chosen) :]:
        if len(chosen) >= spec.n_questions:
            break
        chosen.append(item)

    correct = {
        name: {item.id: evaluate_item(stacks[name], item, 0).correct for item in chosen}
        for name in ("degraded", "evolved")
    }
    chosen_ids = [item.id for item in chosen]
    dependent_ids = {item.id for item in dependent}

    # final ids in selection order
    renamed = {item.id: "q-{:03d}".format(n + 1) for n, item in enumerate(chosen)}
    qa_set = [replace(item, id=renamed[item.id]) for item in chosen]
    return World(
        spec=spec,
        truth_store=truth,
        degraded_store=degraded,
        corpus=corpus,
        qa_set=qa_set,
        config=config,
        removed_facts=removed,
        dependent_items=sorted(renamed[i] for i in chosen_ids if i in dependent_ids),
        recovery_items=sorted(
            renamed[i]
            for i in chosen_ids
            if i in dependent_ids and not correct["degraded"][i]
        ),
        accuracy={
            "truth": 1.0,
            "degraded": _accuracy(correct["degraded"], chosen_ids),
            "evolved": _accuracy(correct["evolved"], chosen_ids),
        },
        attempt=attempt,
    )


def generate_world(spec: WorldSpec, config: TempographConfig = WORLD_CONFIG) -> World:
    """
    Build a world from ``spec``. Deterministic in the seed. Questions are kept
    when the truth graph answers them; how the degraded and evolved graphs do
    is only measured. A seed whose truth answers nothing, or whose removals
    touch no answerable question, is retried with derived seeds before giving
    up.
    """
    for attempt in range(MAX_ATTEMPTS):
        rng = random.Random(spec.seed + attempt * RESEED_STRIDE)
        world = _attempt(spec, rng, config, attempt)
        if world is not None:
            logger.info(
                "Generated %s world (seed %d, attempt %d): %d facts removed, %d documents, %d questions",
                spec.domain,
                spec.seed,
                attempt,
                len(world.removed_facts),
                len(world.corpus),
                len(world.qa_set),
            )
            return world
    raise WorldSpecException(
        "no feasible world after {} attempts".format(MAX_ATTEMPTS), spec.to_dict()
    )


def write_world(world: World, out_dir: str) -> Dict[str, str]:
    """Write every artifact of ``world`` and return their paths by role."""
    os.makedirs(out_dir, exist_ok=True)
    paths = {
        "truth": os.path.join(out_dir, "truth.snapshot.jsonl"),
        "degraded": os.path.join(out_dir, "degraded.snapshot.jsonl"),
        "corpus": os.path.join(out_dir, "corpus.jsonl"),
        "qa": os.path.join(out_dir, "qa.jsonl"),
        "config": os.path.join(out_dir, "config.json"),
        "world": os.path.join(out_dir, "world.json"),
    }
    snapshot_save(world.truth_store, paths["truth"])
    snapshot_save(world.degraded_store, paths["degraded"])
    _write_lines(paths["corpus"], [dump_json_line(d.to_dict()) for d in world.corpus])
    _write_lines(paths["qa"], dataset_lines(world.qa_set))
    _write_json(paths["config"], world.config.to_dict())
    _write_json(paths["world"], world.description())
    return paths


def _write_lines(path: str, lines: Sequence[str]):
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        for line in lines:
            f.write(line + "\n")


def _write_json(path: str, data: Dict[str, Any]):
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        f.write(json.dumps(data, indent=2, sort_keys=True) + "\n")
