"""
Tempograph (c) 2026 The Tempograph Authors

SPDX-License-Identifier: MIT

Text encoders and exact similarity search.
"""

from .encoder import (
    Encoder,
    HashingEncoder,
    RemoteEncoder,
    T_Vector,
    HASH_DIMENSION,
    entity_text,
    mention_text,
    schema_text,
    zero_vector,
    create_encoder,
)
from .index import EmbeddingIndex, cosine_sim, topk
from .cache import EmbeddingCache
