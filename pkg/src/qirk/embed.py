"""Embedding providers: text -> unit-normalized vector.

The default provider hashes character trigrams into a fixed number of
buckets; it is deterministic, dependency-free and robust to small typos,
which is what keyword repair needs to work offline.  A neural model can be
plugged in through :class:`HttpEmbeddingProvider` (POST ``{"texts": [...]}``
returning ``{"vectors": [[...]]}``).
"""

from __future__ import annotations

from typing import Iterable, Protocol, Sequence

import numpy as np

from .errors import ProviderFailure

DEFAULT_DIM = 256

_FNV_OFFSET = 0xCBF29CE484222325
_FNV_PRIME = 0x100000001B3
_MASK64 = 0xFFFFFFFFFFFFFFFF


def fnv1a64(data: bytes) -> int:
    """Stable 64-bit FNV-1a hash (no process seed, unlike ``hash``)."""
    h = _FNV_OFFSET
    for byte in data:
        h ^= byte
        h = (h * _FNV_PRIME) & _MASK64
    return h


class EmbeddingProvider(Protocol):
    @property
    def dim(self) -> int: ...

    def embed(self, text: str) -> np.ndarray: ...

    def embed_batch(self, texts: Sequence[str]) -> list[np.ndarray]: ...


def normalize_text(text: str) -> list[str]:
    """Lowercase, fold punctuation (including '_') to spaces, split to tokens."""
    folded = "".join(ch if ch.isalnum() else " " for ch in text.lower())
    return folded.split()


def token_trigrams(token: str) -> Iterable[str]:
    padded = f"^{token}$"
    for i in range(len(padded) - 2):
        yield padded[i:i + 3]


class TrigramHashProvider:
    """Character-trigram hashing into ``dim`` buckets, L2-normalized.

    Text that produces no trigrams (empty or punctuation-only) maps to the
    zero-guard vector (1, 0, ..., 0).
    """

    def __init__(self, dim: int = DEFAULT_DIM):
        self._dim = dim

    @property
    def dim(self) -> int:
        return self._dim

    def embed(self, text: str) -> np.ndarray:
        counts = np.zeros(self._dim, dtype=np.float64)
        for token in normalize_text(text):
            for gram in token_trigrams(token):
                counts[fnv1a64(gram.encode("utf-8")) % self._dim] += 1.0
        norm = float(np.linalg.norm(counts))
        if norm == 0.0:
            guard = np.zeros(self._dim, dtype=np.float64)
            guard[0] = 1.0
            return guard
        return counts / norm

    def embed_batch(self, texts: Sequence[str]) -> list[np.ndarray]:
        return [self.embed(t) for t in texts]


class HttpEmbeddingProvider:
    """Remote provider speaking the batch JSON protocol.

    The first response fixes the dimension; later mismatches fail loudly.
    Vectors are re-normalized so downstream cosine math holds regardless of
    what the service returns.
    """

    def __init__(self, endpoint: str, timeout: float = 30.0,
                 batch_size: int = 64):
        self.endpoint = endpoint
        self.timeout = timeout
        self.batch_size = batch_size
        self._dim: int | None = None

    @property
    def dim(self) -> int:
        if self._dim is None:
            self.embed("")
        return self._dim

    def _post(self, texts: Sequence[str]) -> list[np.ndarray]:
        import requests

        try:
            resp = requests.post(self.endpoint, json={"texts": list(texts)},
                                 timeout=self.timeout)
            resp.raise_for_status()
            vectors = resp.json()["vectors"]
        except Exception as exc:
            raise ProviderFailure(f"embedding endpoint failed: {exc}") from exc
        if len(vectors) != len(texts):
            raise ProviderFailure(
                f"endpoint returned {len(vectors)} vectors for "
                f"{len(texts)} texts")
        out = []
        for vec in vectors:
            arr = np.asarray(vec, dtype=np.float64)
            if self._dim is None:
                self._dim = int(arr.shape[0])
            if arr.shape != (self._dim,):
                raise ProviderFailure(
                    f"endpoint changed dimension {arr.shape} != ({self._dim},)")
            norm = float(np.linalg.norm(arr))
            if norm == 0.0:
                arr = np.zeros(self._dim)
                arr[0] = 1.0
            else:
                arr = arr / norm
            out.append(arr)
        return out

    def embed(self, text: str) -> np.ndarray:
        return self._post([text])[0]

    def embed_batch(self, texts: Sequence[str]) -> list[np.ndarray]:
        out: list[np.ndarray] = []
        for start in range(0, len(texts), self.batch_size):
            out.extend(self._post(texts[start:start + self.batch_size]))
        return out
