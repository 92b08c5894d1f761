"""
Tempograph (c) 2026 The Tempograph Authors

SPDX-License-Identifier: MIT

Relation vocabularies of the synthetic worlds: match results and movie
credits in miniature.
"""

from dataclasses import dataclass
from typing import Dict, Tuple


@dataclass(frozen=True)
class RelationSpec:
    subject_type: str
    relation: str
    object_type: str
    exclusive: bool = False
    when: str = ""
    """"year" or "date" for facts with a validity window, empty for timeless ones"""


@dataclass(frozen=True)
class QuestionTemplate:
    text: str
    """Uses ``{subject}`` and, for timed first hops, ``{when}``"""
    chain: Tuple[str, ...]
    """Relations followed from the subject, the last one reaches the answer"""


@dataclass(frozen=True)
class Vocabulary:
    name: str
    entity_types: Tuple[Tuple[str, float], ...]
    """Entity types with their share of the world; the last one takes the rest"""
    name_parts: Dict[str, Tuple[Tuple[str, ...], ...]]
    """Per type, word lists whose product gives the entity names"""
    relations: Tuple[RelationSpec, ...]
    templates: Tuple[QuestionTemplate, ...]

    @property
    def edge_relations(self) -> Tuple[RelationSpec, ...]:
        return tuple(r for r in self.relations if not r.exclusive)

    @property
    def exclusive_relations(self) -> Tuple[RelationSpec, ...]:
        return tuple(r for r in self.relations if r.exclusive)


CITIES = (
    "Riverton",
    "Ashford",
    "Bellmoor",
    "Calder",
    "Dunmore",
    "Eastvale",
    "Fairhaven",
    "Glenwick",
    "Harrowgate",
    "Kingsport",
    "Lakemont",
    "Marlow",
)

FIRST_NAMES = (
    "Marco",
    "Elena",
    "Jonas",
    "Priya",
    "Tomas",
    "Aisha",
    "Lukas",
    "Mei",
    "Omar",
    "Sofia",
    "Diego",
    "Hana",
    "Felix",
    "Nadia",
    "Pavel",
    "Ines",
)

LAST_NAMES = (
    "Rossi",
    "Kessler",
    "Moreau",
    "Tanaka",
    "Okafor",
    "Lindqvist",
    "Haddad",
    "Novak",
    "Brennan",
    "Castillo",
    "Varga",
    "Adeyemi",
)

SPORTS = Vocabulary(
    name="sports",
    entity_types=(("City", 0.15), ("Team", 0.25), ("Player", 0.0)),
    name_parts={
        "City": (CITIES,),
        "Team": (
            ("Northside", "Redhill", "Stonegate", "Westbrook", "Oakridge", "Silverlake"),
            ("Lions", "Falcons", "Rovers", "Wolves", "Hawks", "Comets"),
        ),
        "Player": (FIRST_NAMES, LAST_NAMES),
    },
    relations=(
        RelationSpec("Player", "played for", "Team", when="year"),
        RelationSpec("Team", "based in", "City"),
        RelationSpec("Team", "played against", "Team", when="date"),
        RelationSpec("Player", "birthday", "Date", exclusive=True),
        RelationSpec("Team", "founded", "Year", exclusive=True),
    ),
    templates=(
        QuestionTemplate("Which team has {subject} played for in {when}?", ("played for",)),
        QuestionTemplate(
            "Which city is the team that {subject} played for in {when} based in?",
            ("played for", "based in"),
        ),
        QuestionTemplate(
            "Which team has {subject} played against on {when}?", ("played against",)
        ),
        QuestionTemplate(
            "Which city is the team that {subject} played against on {when} based in?",
            ("played against", "based in"),
        ),
    ),
)

MOVIES = Vocabulary(
    name="movies",
    entity_types=(("City", 0.1), ("Company", 0.15), ("Movie", 0.3), ("Person", 0.0)),
    name_parts={
        "City": (CITIES,),
        "Company": (
            ("Bluelight", "Northstar", "Paragon", "Meridian", "Lighthouse", "Redwood"),
            ("Pictures", "Studios", "Films"),
        ),
        "Movie": (
            ("Silent", "Crimson", "Hidden", "Golden", "Broken", "Distant", "Electric"),
            ("Harbor", "Orchard", "Signal", "Empire", "Garden", "Frontier", "Lantern"),
        ),
        "Person": (FIRST_NAMES, LAST_NAMES),
    },
    relations=(
        RelationSpec("Person", "acted in", "Movie", when="year"),
        RelationSpec("Movie", "produced by", "Company"),
        RelationSpec("Company", "headquartered in", "City"),
        RelationSpec("Person", "birthday", "Date", exclusive=True),
        RelationSpec("Movie", "release date", "Date", exclusive=True),
    ),
    templates=(
        QuestionTemplate(
            "Which movie has {subject} acted in during {when}?", ("acted in",)
        ),
        QuestionTemplate(
            "Which company is the movie that {subject} acted in during {when} produced by?",
            ("acted in", "produced by"),
        ),
        QuestionTemplate(
            "Which city is the company that produced the movie {subject} acted in "
            "during {when} headquartered in?",
            ("acted in", "produced by", "headquartered in"),
        ),
        QuestionTemplate("Which company is {subject} produced by?", ("produced by",)),
    ),
)

VOCABULARIES: Dict[str, Vocabulary] = {v.name: v for v in (SPORTS, MOVIES)}
