"""Embedding ingestion plus a deterministic fallback embedder.

Real runs ingest externally computed sentence embeddings (text matrix with an
"n d" header, or JSONL rows {"id", "vec"}). The fallback is a signed hashed
bag-of-words (d=256, sha1 buckets, L2-normalized) so the pipeline runs end to
end without external files.
"""

import hashlib
import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from ..errors import DimMismatch, NonFiniteValue
from ..tokenizer import tokenize

__all__ = ["EmbeddingMatrix", "load_embeddings", "hashed_bow_embed", "FALLBACK_DIM"]

FALLBACK_DIM = 256


@dataclass
class EmbeddingMatrix:
    ids: list[str]
    values: np.ndarray  # (n, d) float32


def _validate(values: np.ndarray) -> None:
    finite = np.isfinite(values).all(axis=1)
    if not finite.all():
        raise NonFiniteValue(int(np.argmin(finite)))


def _load_text(path: Path) -> EmbeddingMatrix:
    with open(path, "r", encoding="utf-8") as fh:
        header = fh.readline().split()
        if len(header) != 2:
            raise DimMismatch(f"{path}: expected 'n d' header, got {header!r}")
        n, d = int(header[0]), int(header[1])
        rows = np.zeros((n, d), dtype=np.float32)
        for i in range(n):
            cells = fh.readline().split()
            if len(cells) != d:
                raise DimMismatch(f"{path}: row {i} has {len(cells)} values, expected {d}")
            rows[i] = [float(c) for c in cells]
    _validate(rows)
    return EmbeddingMatrix(ids=[str(i) for i in range(n)], values=rows)


def _load_jsonl(path: Path) -> EmbeddingMatrix:
    ids: list[str] = []
    vecs: list[list[float]] = []
    dim: int | None = None
    with open(path, "r", encoding="utf-8") as fh:
        for line in fh:
            line = line.strip()
            if not line:
                continue
            row = json.loads(line)
            vec = row["vec"]
            if dim is None:
                dim = len(vec)
            elif len(vec) != dim:
                raise DimMismatch(f"{path}: row {len(ids)} has dim {len(vec)}, expected {dim}")
            ids.append(str(row["id"]))
            vecs.append(vec)
    values = np.asarray(vecs, dtype=np.float32).reshape(len(ids), dim or 0)
    _validate(values)
    return EmbeddingMatrix(ids=ids, values=values)


def load_embeddings(path: str | Path) -> EmbeddingMatrix:
    path = Path(path)
    if path.suffix == ".jsonl":
        return _load_jsonl(path)
    return _load_text(path)


def _bucket_and_sign(token: str) -> tuple[int, float]:
    digest = hashlib.sha1(token.encode("utf-8")).digest()
    bucket = int.from_bytes(digest[:4], "little")
    sign = 1.0 if digest[4] & 1 else -1.0
    return bucket, sign


def hashed_bow_embed(texts: list[str], dim: int = FALLBACK_DIM) -> EmbeddingMatrix:
    values = np.zeros((len(texts), dim), dtype=np.float32)
    for i, text in enumerate(texts):
        for token in tokenize(text.lower()):
            bucket, sign = _bucket_and_sign(token)
            values[i, bucket % dim] += sign
        norm = float(np.linalg.norm(values[i]))
        if norm > 0:
            values[i] /= norm
    return EmbeddingMatrix(ids=[str(i) for i in range(len(texts))], values=values)
