"""
Tempograph (c) 2026 The Tempograph Authors

SPDX-License-Identifier: MIT

Prompt templates of the remote oracle. The templates are plain text assets
next to this module; ``{domain}`` style slots and ``<query>`` style slots
are filled by plain string replacement, so JSON braces in the templates
stay untouched.
"""

import os
from functools import lru_cache
from typing import Dict, Optional

from ..types.exceptions import ValidationException

PROMPT_VERSION = 1

PROMPT_DIR = os.path.join(os.path.dirname(__file__), "prompts")

TEMPLATES = (
    "route_planning",
    "global_initialization",
    "relevance_scoring",
    "relation_scoring",
    "entity_alignment",
    "fact_extraction",
    "answer_judging",
)


@lru_cache(maxsize=None)
def load_template(name: str) -> str:
    if name not in TEMPLATES:
        raise ValidationException("unknown prompt template", name)
    with open(os.path.join(PROMPT_DIR, name + ".txt"), "r", encoding="utf-8") as f:
        return f.read()


def render_prompt(
    name: str,
    domain: str,
    slots: Dict[str, str],
    n_routes: Optional[int] = None,
    few_shot: str = "",
) -> str:
    """
    Fill a template. ``slots`` maps angle bracket slot names (without the
    brackets, e.g. ``"query time"``) to their text.
    """
    text = load_template(name).replace("{domain}", domain)
    if n_routes is not None:
        text = text.replace("{route}", str(n_routes))
    text = text.replace("<few-shot examples>", few_shot)
    for slot, value in slots.items():
        marker = "<" + slot + ">"
        if marker not in text:
            raise ValidationException(
                "template {} has no slot {}".format(name, marker), slot
            )
        text = text.replace(marker, value)
    return text


def render_route(route) -> str:
    return " -> ".join(route)
