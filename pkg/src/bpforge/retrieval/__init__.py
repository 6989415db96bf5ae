"""Exemplar retrieval: embed rule texts, fetch the closest stored program."""

from .embedder import HashedTfidfEmbedder, embed
from .index import ExampleEntry, RagIndex, build_index, default_corpus_dir, retrieve_nearest

__all__ = [
    "ExampleEntry",
    "HashedTfidfEmbedder",
    "RagIndex",
    "build_index",
    "default_corpus_dir",
    "embed",
    "retrieve_nearest",
]
