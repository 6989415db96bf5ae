"""Default offline text embedder: hashed character 3-gram TF-IDF.

Keeps retrieval deterministic and network-free. An external embedder can
be plugged into the index instead; whichever is used is recorded in
``embedder_id`` so stored vectors are never mixed across embedders.
"""

import hashlib
import math
import re

import numpy as np

from ..errors import InvalidInput

DIM = 512
NGRAM = 3


def _normalize(text: str) -> str:
    return re.sub(r"\s+", " ", text.strip().lower())


def _ngrams(text: str):
    padded = f" {_normalize(text)} "
    if len(padded) < NGRAM:
        padded = padded.ljust(NGRAM)
    for i in range(len(padded) - NGRAM + 1):
        yield padded[i : i + NGRAM]


def _bucket(gram: str) -> int:
    digest = hashlib.md5(gram.encode("utf-8")).digest()
    return int.from_bytes(digest[:4], "big") % DIM


class HashedTfidfEmbedder:
    def __init__(self, idf: np.ndarray | None = None, corpus_tag: str = "raw"):
        self.idf = np.ones(DIM) if idf is None else idf
        self.embedder_id = f"char{NGRAM}-hash{DIM}-tfidf-{corpus_tag}"

    @classmethod
    def fit(cls, texts) -> "HashedTfidfEmbedder":
        """Learn bucket IDF weights from the corpus vocabulary."""
        texts = list(texts)
        df = np.zeros(DIM)
        for text in texts:
            for b in {_bucket(g) for g in _ngrams(text)}:
                df[b] += 1
        n = len(texts)
        idf = np.log((1.0 + n) / (1.0 + df)) + 1.0
        tag = hashlib.sha256(idf.tobytes()).hexdigest()[:12]
        return cls(idf=idf, corpus_tag=tag)

    def embed(self, text: str) -> np.ndarray:
        if not text or not text.strip():
            raise InvalidInput("cannot embed empty text")
        vec = np.zeros(DIM)
        for gram in _ngrams(text):
            vec[_bucket(gram)] += 1.0
        vec *= self.idf
        norm = math.sqrt(float(vec @ vec))
        return vec / norm


_DEFAULT = HashedTfidfEmbedder()


def embed(text: str) -> np.ndarray:
    """Embed with the unfitted default (uniform IDF); always unit norm."""
    return _DEFAULT.embed(text)
