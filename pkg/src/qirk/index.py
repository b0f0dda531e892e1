"""Vector-similarity index over entity and property labels and descriptions.

One vector per record, embedding text ``label + ". " + description``.  The
scan is exact (flat) cosine over a dense float32 matrix per kind; the hot
loop lives in :mod:`qirk.kernels`.  The index persists to a small versioned
binary file and reloads with identical query results.
"""

from __future__ import annotations

import struct
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

import numpy as np

from . import kernels
from .embed import EmbeddingProvider
from .errors import EmptyIndex, ProviderFailure
from .store import KgStore

ENTITY = "entity"
PROPERTY = "property"

_MAGIC = b"QIRKVIX1"
_VERSION = 1
_KIND_CODE = {ENTITY: 0, PROPERTY: 1}
_KIND_NAME = {0: ENTITY, 1: PROPERTY}

DEFAULT_K = 5
DEFAULT_SCORE_THRESHOLD = 0.3


@dataclass(frozen=True)
class Candidate:
    id: str
    score: float
    label: str


@dataclass(frozen=True)
class CandidateSet:
    """Ranked matches for one keyword: score desc, popularity desc, id asc."""

    keyword: str
    kind: str
    candidates: tuple[Candidate, ...]

    def ids(self) -> list[str]:
        return [c.id for c in self.candidates]

    def __len__(self) -> int:
        return len(self.candidates)


class _Block:
    def __init__(self, dim: int):
        self.ids: list[str] = []
        self.labels: list[str] = []
        self.pops: list[int] = []
        self.rows: list[np.ndarray] = []
        self.matrix = np.empty((0, dim), dtype=np.float32)
        self.pop_arr = np.empty(0, dtype=np.int64)

    def add(self, item_id: str, label: str, popularity: int, vec: np.ndarray):
        self.ids.append(item_id)
        self.labels.append(label)
        self.pops.append(popularity)
        self.rows.append(np.asarray(vec, dtype=np.float32))

    def finish(self, dim: int):
        if self.rows:
            self.matrix = np.ascontiguousarray(
                np.stack(self.rows), dtype=np.float32)
        else:
            self.matrix = np.empty((0, dim), dtype=np.float32)
        self.pop_arr = np.asarray(self.pops, dtype=np.int64)
        self.rows = []


class SemanticIndex:
    def __init__(self, dim: int, provider: EmbeddingProvider,
                 blocks: dict[str, _Block]):
        self.dim = dim
        self.provider = provider
        self._blocks = blocks
        kernels.warmup()

    @property
    def count(self) -> int:
        return sum(b.matrix.shape[0] for b in self._blocks.values())

    def count_of(self, kind: str) -> int:
        return self._blocks[kind].matrix.shape[0]

    def resolve_keyword(self, keyword: str, kind: str, k: int = DEFAULT_K,
                        threshold: float = DEFAULT_SCORE_THRESHOLD,
                        popularity_boost: float = 0.0) -> CandidateSet:
        """Top-k candidates for a keyword among records of one kind.

        Ties break by popularity descending, then id ascending.  Candidates
        scoring under ``threshold`` are dropped (an unbounded list would make
        the compiled IN-filters useless).
        """
        if kind not in self._blocks:
            raise ValueError(f"kind must be one of {sorted(self._blocks)}")
        if k < 1:
            raise ValueError("k must be >= 1")
        block = self._blocks[kind]
        n = block.matrix.shape[0]
        if n == 0:
            raise EmptyIndex(f"index holds no {kind} vectors")
        query = np.asarray(self.provider.embed(keyword), dtype=np.float32)
        scores = kernels.similarity_scores(block.matrix, query)
        scores = np.clip(scores, -1.0, 1.0)
        if popularity_boost:
            scores = scores + popularity_boost * np.log1p(block.pop_arr)
        keep = [i for i in range(n) if scores[i] >= threshold]
        keep.sort(key=lambda i: (-scores[i], -block.pops[i], block.ids[i]))
        top = keep[:k]
        return CandidateSet(
            keyword=keyword, kind=kind,
            candidates=tuple(
                Candidate(id=block.ids[i], score=float(scores[i]),
                          label=block.labels[i])
                for i in top))

    # -- persistence ---------------------------------------------------------

    def save(self, path) -> None:
        blocks = [(kind, self._blocks[kind]) for kind in (ENTITY, PROPERTY)]
        count = sum(b.matrix.shape[0] for _, b in blocks)
        with open(path, "wb") as fh:
            fh.write(_MAGIC)
            fh.write(struct.pack("<II", _VERSION, self.dim))
            fh.write(struct.pack("<Q", count))
            for kind, block in blocks:
                code = _KIND_CODE[kind]
                for i, item_id in enumerate(block.ids):
                    id_b = item_id.encode("utf-8")
                    label_b = block.labels[i].encode("utf-8")
                    fh.write(struct.pack("<BH", code, len(id_b)))
                    fh.write(id_b)
                    fh.write(struct.pack("<I", len(label_b)))
                    fh.write(label_b)
                    fh.write(struct.pack("<q", block.pops[i]))
            for _, block in blocks:
                fh.write(np.ascontiguousarray(
                    block.matrix, dtype="<f4").tobytes())

    @classmethod
    def load(cls, path, provider: EmbeddingProvider) -> "SemanticIndex":
        data = Path(path).read_bytes()
        if data[:8] != _MAGIC:
            raise ValueError(f"{path}: not an index file")
        version, dim = struct.unpack_from("<II", data, 8)
        if version != _VERSION:
            raise ValueError(f"{path}: unsupported index version {version}")
        if provider.dim != dim:
            raise ValueError(
                f"{path}: index dimension {dim} != provider dimension "
                f"{provider.dim}")
        (count,) = struct.unpack_from("<Q", data, 16)
        offset = 24
        rows: list[tuple[str, str, str, int]] = []
        for _ in range(count):
            code, id_len = struct.unpack_from("<BH", data, offset)
            offset += 3
            item_id = data[offset:offset + id_len].decode("utf-8")
            offset += id_len
            (label_len,) = struct.unpack_from("<I", data, offset)
            offset += 4
            label = data[offset:offset + label_len].decode("utf-8")
            offset += label_len
            (pop,) = struct.unpack_from("<q", data, offset)
            offset += 8
            rows.append((_KIND_NAME[code], item_id, label, pop))
        matrix = np.frombuffer(
            data, dtype="<f4", count=count * dim, offset=offset
        ).reshape(count, dim)
        blocks = {ENTITY: _Block(dim), PROPERTY: _Block(dim)}
        for i, (kind, item_id, label, pop) in enumerate(rows):
            blocks[kind].add(item_id, label, pop, matrix[i])
        for block in blocks.values():
            block.finish(dim)
        return cls(dim=dim, provider=provider, blocks=blocks)


def embedding_text(label: str, description: str) -> str:
    return f"{label}. {description}"


def build_index(store: KgStore, provider: EmbeddingProvider) -> SemanticIndex:
    """Embed every entity and property of the store into a fresh index."""
    blocks = {ENTITY: _Block(provider.dim), PROPERTY: _Block(provider.dim)}

    def add_all(kind: str, records):
        block = blocks[kind]
        items = list(records)
        texts = [embedding_text(r.label, r.description) for r in items]
        batch = 64
        for start in range(0, len(items), batch):
            chunk_items = items[start:start + batch]
            chunk_texts = texts[start:start + batch]
            try:
                vectors = provider.embed_batch(chunk_texts)
            except Exception:
                # Re-embed one by one so the failure names the offending record.
                vectors = []
                for rec, text in zip(chunk_items, chunk_texts):
                    try:
                        vectors.append(provider.embed(text))
                    except Exception as exc:
                        raise ProviderFailure(
                            f"embedding failed for {rec.id}: {exc}",
                            item_id=rec.id) from exc
            for rec, vec in zip(chunk_items, vectors):
                popularity = getattr(rec, "popularity", 0)
                block.add(rec.id, rec.label, popularity, vec)

    add_all(ENTITY, store.entities.values())
    add_all(PROPERTY, store.properties.values())
    for block in blocks.values():
        block.finish(provider.dim)
    return SemanticIndex(dim=provider.dim, provider=provider, blocks=blocks)
