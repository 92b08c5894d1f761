"""
Tempograph (c) 2026 The Tempograph Authors

SPDX-License-Identifier: MIT
"""

import hashlib
import logging
from abc import ABC, abstractmethod
from typing import List, Optional

import numpy as np

from ..helpers import tokenize
from ..remote import JsonHttpClient
from ..types.exceptions import ASSERT_NON_EMPTY, ValidationException
from .cache import EmbeddingCache

logger = logging.getLogger(__name__)

# numpy float64 vectors of the encoder's dimension, read-only once returned
T_Vector = np.ndarray

HASH_DIMENSION = 256

ENTITY_TEMPLATE = "type: {type} | name: {name} | desc: {description}"
MENTION_TEMPLATE = "mention: {mention} | time: {temporal_context}"
SCHEMA_TEMPLATE = "{subject_type} -[{relation}]-> {object_type}"


def entity_text(type: str, name: str, description: str = "") -> str:
    return ENTITY_TEMPLATE.format(type=type, name=name, description=description)


def mention_text(mention: str, temporal_context: str = "") -> str:
    return MENTION_TEMPLATE.format(mention=mention, temporal_context=temporal_context)


def schema_text(subject_type: str, relation: str, object_type: str) -> str:
    return SCHEMA_TEMPLATE.format(
        subject_type=subject_type, relation=relation, object_type=object_type
    )


def zero_vector(dimension: int) -> T_Vector:
    vec = np.zeros(dimension, dtype=np.float64)
    vec.flags.writeable = False
    return vec


def as_unit(vec: np.ndarray) -> T_Vector:
    """L2-normalise, leaving the zero vector untouched."""
    vec = np.asarray(vec, dtype=np.float64).copy()
    norm = np.linalg.norm(vec)
    if norm > 0:
        vec /= norm
    vec.flags.writeable = False
    return vec


class Encoder(ABC):
    """
    Turns text into fixed length vectors. Subclasses implement
    :meth:`encode_text`; the structured encoders format the canonical
    templates and delegate to it.
    """

    dimension: int

    @abstractmethod
    def encode_text(self, text: str) -> T_Vector:
        pass

    def encode_many(self, texts: List[str]) -> List[T_Vector]:
        return [self.encode_text(t) for t in texts]

    def encode_entity(self, type: str, name: str, description: str = "") -> T_Vector:
        ASSERT_NON_EMPTY(name, "entity name")
        return self.encode_text(entity_text(type, name, description))

    def encode_mention_with_time(
        self, mention: str, temporal_context: str = ""
    ) -> T_Vector:
        ASSERT_NON_EMPTY(mention, "mention")
        return self.encode_text(mention_text(mention, temporal_context))

    def encode_schema(
        self, subject_type: str, relation: str, object_type: str
    ) -> T_Vector:
        ASSERT_NON_EMPTY(relation, "schema relation")
        return self.encode_text(schema_text(subject_type, relation, object_type))


class HashingEncoder(Encoder):
    """
    Deterministic feature hashing bag of words.

    The text is lowercased and split on every non-alphanumeric character.
    Each token and each pair of adjacent tokens (joined by one space) is
    hashed with blake2b (8 byte digest, read as a big-endian unsigned
    integer ``h``). The feature adds ``+1`` to bucket ``h % 256`` when the
    top bit of ``h`` is clear and ``-1`` otherwise. The sum is then
    L2-normalised; text without tokens encodes to the zero vector.
    """

    def __init__(self, dimension: int = HASH_DIMENSION):
        if dimension < 1:
            raise ValidationException("encoder dimension must be >= 1", dimension)
        self.dimension = dimension

    @staticmethod
    def features(text: str) -> List[str]:
        tokens = tokenize(text)
        return tokens + [a + " " + b for a, b in zip(tokens, tokens[1:])]

    def bucket_and_sign(self, feature: str):
        digest = hashlib.blake2b(feature.encode("utf-8"), digest_size=8).digest()
        h = int.from_bytes(digest, "big", signed=False)
        return h % self.dimension, (-1.0 if h >> 63 else 1.0)

    def encode_text(self, text: str) -> T_Vector:
        vec = np.zeros(self.dimension, dtype=np.float64)
        for feature in self.features(text):
            bucket, sign = self.bucket_and_sign(feature)
            vec[bucket] += sign
        return as_unit(vec)


class RemoteEncoder(Encoder):
    """
    Encodes through an OpenAI-compatible ``/embeddings`` endpoint. Vectors are
    cached by input hash, so repeated runs only pay for new texts.
    """

    def __init__(
        self,
        client: JsonHttpClient,
        model_name: str,
        dimension: int,
        cache: Optional[EmbeddingCache] = None,
    ):
        self.client = client
        self.model_name = model_name
        self.dimension = dimension
        self.cache = cache if cache is not None else EmbeddingCache()

    def encode_text(self, text: str) -> T_Vector:
        if not tokenize(text):
            return zero_vector(self.dimension)
        cached = self.cache.get(text)
        if cached is not None:
            return cached
        response = self.client.post(
            "embeddings", {"model": self.model_name, "input": [text]}
        )
        try:
            components = response["data"][0]["embedding"]
        except (KeyError, IndexError, TypeError):
            raise ValidationException("malformed embeddings response", response)
        if len(components) != self.dimension:
            raise ValidationException(
                "remote encoder returned dimension {}, expected {}".format(
                    len(components), self.dimension
                )
            )
        vec = as_unit(np.asarray(components, dtype=np.float64))
        self.cache.put(text, vec)
        return vec


def create_encoder(config) -> Encoder:
    """
    The encoder an :class:`~tempograph.config.OracleConfig` asks for: the
    remote one when the remote backend names an embedding model, the hashing
    encoder otherwise.
    """
    if config.backend == "remote" and config.embedding_model:
        client = JsonHttpClient(
            config.endpoint_url,
            config.api_key_env,
            timeout_s=config.timeout_s,
            max_in_flight=config.max_in_flight,
        )
        cache = EmbeddingCache(config.embedding_cache or None)
        return RemoteEncoder(
            client, config.embedding_model, config.embedding_dimension, cache
        )
    return HashingEncoder(config.embedding_dimension)
