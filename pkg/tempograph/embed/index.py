"""
Tempograph (c) 2026 The Tempograph Authors

SPDX-License-Identifier: MIT
"""

import logging
from typing import Dict, List, Optional, Tuple

import numpy as np

from ..types.exceptions import ValidationException, ASSERT_POSITIVE
from .encoder import Encoder, T_Vector, entity_text, schema_text

logger = logging.getLogger(__name__)


def cosine_sim(a: T_Vector, b: T_Vector) -> float:
    """Cosine similarity in [-1, 1]; zero when either vector is zero."""
    if a.shape != b.shape:
        raise ValidationException(
            "cannot compare vectors of different dimension", (a.shape, b.shape)
        )
    norm = float(np.linalg.norm(a)) * float(np.linalg.norm(b))
    if norm == 0.0:
        return 0.0
    if np.array_equal(a, b):
        return 1.0
    return float(min(1.0, max(-1.0, float(np.dot(a, b)) / norm)))


class EmbeddingIndex:
    """
    Exact nearest neighbour index: a key, a vector and the encoded text per
    item. Scoring scans every row.
    """

    def __init__(self, dimension: int):
        ASSERT_POSITIVE(dimension, "index dimension")
        self.dimension = dimension
        self._keys: List[str] = []
        self._texts: List[str] = []
        self._rows: Dict[str, int] = dict()
        self._matrix = np.zeros((0, dimension), dtype=np.float64)

    def __len__(self):
        return len(self._keys)

    def __contains__(self, key: str):
        return key in self._rows

    @property
    def keys(self) -> List[str]:
        return list(self._keys)

    def text_of(self, key: str) -> str:
        return self._texts[self._rows[key]]

    def vector_of(self, key: str) -> T_Vector:
        return self._matrix[self._rows[key]]

    def add(self, key: str, vector: T_Vector, text: str = ""):
        if key in self._rows:
            raise ValidationException("duplicate index key", key)
        self._check_dimension(vector)
        self._rows[key] = len(self._keys)
        self._keys.append(key)
        self._texts.append(text)
        self._matrix = np.vstack([self._matrix, vector.reshape(1, -1)])

    def add_many(
        self, keys: List[str], vectors: np.ndarray, texts: Optional[List[str]] = None
    ):
        """Append rows in one go; ``vectors`` has one row per key."""
        texts = texts if texts is not None else [""] * len(keys)
        vectors = np.asarray(vectors, dtype=np.float64)
        if vectors.shape != (len(keys), self.dimension) or len(texts) != len(keys):
            raise ValidationException(
                "one vector and text per key expected", (len(keys), vectors.shape)
            )
        if len(set(keys)) != len(keys) or any(k in self._rows for k in keys):
            raise ValidationException("duplicate index key", keys)
        for key, text in zip(keys, texts):
            self._rows[key] = len(self._keys)
            self._keys.append(key)
            self._texts.append(text)
        self._matrix = np.vstack([self._matrix, vectors])

    def upsert(self, key: str, vector: T_Vector, text: str = ""):
        if key not in self._rows:
            self.add(key, vector, text)
            return
        self._check_dimension(vector)
        row = self._rows[key]
        self._texts[row] = text
        self._matrix[row] = vector

    def _check_dimension(self, vector: T_Vector):
        if vector.shape != (self.dimension,):
            raise ValidationException(
                "vector dimension does not match the index", vector.shape
            )

    def scores(self, query: T_Vector) -> np.ndarray:
        """Cosine of ``query`` against every row, in insertion order."""
        self._check_dimension(query)
        if not self._keys:
            return np.zeros(0, dtype=np.float64)
        q_norm = float(np.linalg.norm(query))
        row_norms = np.linalg.norm(self._matrix, axis=1)
        denom = row_norms * q_norm
        dots = self._matrix @ query
        with np.errstate(divide="ignore", invalid="ignore"):
            scores = np.where(denom > 0, dots / np.where(denom > 0, denom, 1.0), 0.0)
        return np.clip(scores, -1.0, 1.0)

    def topk(self, query: T_Vector, k: int) -> List[Tuple[str, float]]:
        return topk(self, query, k)

    # ---- builders for graph content

    @classmethod
    def for_entities(cls, store, encoder: Encoder) -> "EmbeddingIndex":
        index = cls(encoder.dimension)
        index.refresh_entities(store, encoder)
        return index

    def refresh_entities(self, store, encoder: Encoder) -> int:
        """
        Encode every entity whose canonical text is new or changed. Returns
        the number of re-encoded entities.
        """
        changed = 0
        new_keys, new_texts = [], []
        for entity_id in store.entity_ids():
            entity = store.get_entity(entity_id)
            text = entity_text(entity.type, entity.name, entity.description)
            if entity_id not in self._rows:
                new_keys.append(entity_id)
                new_texts.append(text)
            elif self.text_of(entity_id) != text:
                self.upsert(entity_id, encoder.encode_text(text), text)
                changed += 1
        if new_keys:
            vectors = np.stack(encoder.encode_many(new_texts))
            self.add_many(new_keys, vectors, new_texts)
            changed += len(new_keys)
        if changed:
            logger.debug("Re-encoded %d entities", changed)
        return changed

    @classmethod
    def for_schemas(cls, store, encoder: Encoder) -> "EmbeddingIndex":
        index = cls(encoder.dimension)
        index.refresh_schemas(store, encoder)
        return index

    def refresh_schemas(self, store, encoder: Encoder) -> int:
        changed = 0
        for schema in store.schemas:
            key = str(schema)
            if key in self._rows:
                continue
            text = schema_text(schema.subject_type, schema.relation, schema.object_type)
            self.add(key, encoder.encode_text(text), text)
            changed += 1
        return changed


def topk(index: EmbeddingIndex, query: T_Vector, k: int) -> List[Tuple[str, float]]:
    """
    The ``k`` items with the highest cosine to ``query``, best first. Equal
    scores are ordered by ascending key. Returns the whole index, sorted, when
    ``k`` exceeds its size.
    """
    ASSERT_POSITIVE(k, "k")
    scores = index.scores(query)
    ranked = sorted(
        zip(index._keys, (float(s) for s in scores)), key=lambda item: (-item[1], item[0])
    )
    return ranked[:k]
