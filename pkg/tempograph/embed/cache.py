"""
Tempograph (c) 2026 The Tempograph Authors

SPDX-License-Identifier: MIT
"""

import logging
import os
import threading
from typing import Dict, Optional

import numpy as np

from ..helpers import stable_hash, dump_json_line, read_jsonl
from ..types.exceptions import SnapshotFormatException

logger = logging.getLogger(__name__)


def input_hash(text: str) -> str:
    return stable_hash(text, digest_size=16)


class EmbeddingCache:
    """
    Vectors keyed by the hash of their input text. With a ``path`` the cache
    is loaded from and appended to a JSONL file of
    ``{"input_hash", "dimension", "components"}`` records.
    """

    def __init__(self, path: Optional[str] = None):
        self.path = path
        self._vectors: Dict[str, np.ndarray] = dict()
        self._lock = threading.Lock()
        if path is not None and os.path.exists(path):
            self._load(path)

    def _load(self, path: str):
        with open(path, "r", encoding="utf-8") as f:
            try:
                for line_no, record in read_jsonl(f):
                    try:
                        vec = np.asarray(record["components"], dtype=np.float64)
                        if vec.shape != (record["dimension"],):
                            raise ValueError("dimension mismatch")
                    except (KeyError, TypeError, ValueError) as ex:
                        raise SnapshotFormatException(
                            "bad embedding cache record: {}".format(ex), line_no
                        )
                    vec.flags.writeable = False
                    self._vectors[record["input_hash"]] = vec
            except ValueError as ex:
                raise SnapshotFormatException(ex.args[0], ex.args[1])
        logger.info("Loaded %d cached embeddings from %s", len(self._vectors), path)

    def get(self, text: str) -> Optional[np.ndarray]:
        with self._lock:
            return self._vectors.get(input_hash(text))

    def put(self, text: str, vec: np.ndarray):
        key = input_hash(text)
        with self._lock:
            if key in self._vectors:
                return
            self._vectors[key] = vec
            if self.path is not None:
                with open(self.path, "a", encoding="utf-8") as f:
                    f.write(
                        dump_json_line(
                            {
                                "input_hash": key,
                                "dimension": int(vec.shape[0]),
                                "components": [float(c) for c in vec],
                            }
                        )
                        + "\n"
                    )

    def __len__(self):
        return len(self._vectors)
