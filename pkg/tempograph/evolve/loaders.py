"""
Tempograph (c) 2026 The Tempograph Authors

SPDX-License-Identifier: MIT
"""

import os
from abc import ABC, abstractmethod
from typing import Dict, List, Type

from ..helpers import read_jsonl
from ..types import Document
from ..types.exceptions import DatasetException, ValidationException

T_LoaderOpts = Dict[str, object]


class CorpusLoader(ABC):
    """
    A corpus loader is always specific to a given source file. It is a place to
    store all state concerning the reading of that specific file, including
    options.
    """

    def __init__(self, source_path: str, options: T_LoaderOpts):
        self.source_path = source_path
        self.options = options
        self.filename = os.path.split(self.source_path)[-1]

    @classmethod
    @abstractmethod
    def can_parse(cls, source_path: str) -> float:
        """
        Return confidence that the file located at source_path
        should be read by this loader

        :param source_path: the path of the source file
        :return: the confidence that this file belongs to this loader
        """
        pass

    @classmethod
    def instantiate(cls, source_path: str, options: T_LoaderOpts) -> "CorpusLoader":
        return cls(source_path, options)

    @abstractmethod
    def parse(self) -> List[Document]:
        pass


class JsonlCorpusLoader(CorpusLoader):
    """
    One document per line: ``{id, title, text, published_at, source_weight}``.
    """

    @classmethod
    def can_parse(cls, source_path: str) -> float:
        if source_path.endswith(".jsonl"):
            return 1.0
        if source_path.endswith(".json"):
            return 0.5
        return 0.0

    def parse(self) -> List[Document]:
        documents = []
        seen = set()
        with open(self.source_path, "r", encoding="utf-8") as f:
            try:
                for index, (line_no, record) in enumerate(read_jsonl(f)):
                    try:
                        document = Document.from_dict(record)
                    except (KeyError, TypeError, ValueError) as ex:
                        raise DatasetException(
                            "malformed document record (line {}): {}".format(line_no, ex),
                            index,
                        )
                    except ValidationException as ex:
                        raise DatasetException(ex.msg, index, ex.data)
                    if document.id in seen:
                        raise DatasetException(
                            "duplicate document id", index, document.id
                        )
                    seen.add(document.id)
                    documents.append(document)
            except ValueError as ex:
                raise DatasetException(ex.args[0], ex.args[1] - 1)
        return documents


class TextDocumentLoader(CorpusLoader):
    """A plain text file is a single document named after the file."""

    @classmethod
    def can_parse(cls, source_path: str) -> float:
        return 1.0 if source_path.endswith(".txt") else 0.1

    def parse(self) -> List[Document]:
        with open(self.source_path, "r", encoding="utf-8") as f:
            text = f.read()
        name = os.path.splitext(self.filename)[0]
        return [Document(id=name, title=name, text=text)]


CORPUS_LOADERS: List[Type[CorpusLoader]] = [JsonlCorpusLoader, TextDocumentLoader]


def load_corpus(path: str, options: T_LoaderOpts = None) -> List[Document]:
    """Read a corpus with the most confident loader."""
    loader = max(CORPUS_LOADERS, key=lambda cls: cls.can_parse(path))
    return loader.instantiate(path, options or {}).parse()
