"""Cross-lingual word vectors in the word2vec text format.

English and Hindi words share one map; the vectors are expected to be
aligned into a common space already.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field

import numpy as np

log = logging.getLogger(__name__)


class EmbeddingFormatError(ValueError):
    pass


@dataclass
class EmbeddingStore:
    dim: int
    vectors: dict[str, np.ndarray] = field(default_factory=dict)

    def __post_init__(self):
        if self.dim <= 0:
            raise ValueError("dim must be positive")
        for word, vec in self.vectors.items():
            if vec.shape != (self.dim,):
                raise ValueError(f"vector for {word!r} has shape {vec.shape}, expected ({self.dim},)")

    def __contains__(self, word: str) -> bool:
        return word in self.vectors

    def __len__(self) -> int:
        return len(self.vectors)

    def get(self, word: str) -> np.ndarray | None:
        """Vector for ``word``, or ``None`` when the word is not stored."""
        return self.vectors.get(word)

    @classmethod
    def from_dict(cls, vectors: dict) -> "EmbeddingStore":
        arrays = {w: np.asarray(v, dtype=np.float64) for w, v in vectors.items()}
        dims = {a.shape[0] for a in arrays.values()}
        if len(dims) != 1:
            raise ValueError(f"inconsistent vector lengths: {sorted(dims)}")
        return cls(dims.pop(), arrays)


def _parse_header(parts: list[str]) -> tuple[int, int] | None:
    if len(parts) == 2 and all(p.isdigit() for p in parts):
        return int(parts[0]), int(parts[1])
    return None


def load_embeddings(path) -> EmbeddingStore:
    """Read ``word v1 ... v_dim`` lines, with an optional ``count dim`` header.

    Words are lowercased to agree with the tokenizer.  A repeated word keeps
    its first vector and logs a warning.
    """
    dim = None
    vectors: dict[str, np.ndarray] = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            parts = line.rstrip("\n").split()
            if not parts:
                continue
            if lineno == 1:
                header = _parse_header(parts)
                if header is not None:
                    dim = header[1]
                    if dim <= 0:
                        raise EmbeddingFormatError(f"line 1: non-positive dimension {dim}")
                    continue
            word, values = parts[0].lower(), parts[1:]
            if dim is None:
                dim = len(values)
                if dim == 0:
                    raise EmbeddingFormatError(f"line {lineno}: no vector components")
            if len(values) != dim:
                raise EmbeddingFormatError(
                    f"line {lineno}: expected {dim} components, found {len(values)}")
            try:
                vec = np.array([float(v) for v in values], dtype=np.float64)
            except ValueError as exc:
                raise EmbeddingFormatError(f"line {lineno}: {exc}") from None
            if not np.all(np.isfinite(vec)):
                raise EmbeddingFormatError(f"line {lineno}: non-finite component")
            if word in vectors:
                log.warning("line %d: duplicate word %r ignored, keeping first vector", lineno, word)
                continue
            vectors[word] = vec
    if dim is None:
        raise EmbeddingFormatError(f"{path}: no vectors found")
    return EmbeddingStore(dim, vectors)


def cosine(a, b) -> float:
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    if a.shape != b.shape:
        raise ValueError(f"length mismatch: {a.shape} vs {b.shape}")
    na, nb = np.linalg.norm(a), np.linalg.norm(b)
    if na == 0 or nb == 0:
        raise ValueError("cosine is undefined for a zero vector")
    sim = float(np.dot(a, b) / (na * nb))
    return min(1.0, max(-1.0, sim))


def best_cosine_match(word: str, candidates, store: EmbeddingStore) -> tuple[str, float] | None:
    """Most cosine-similar in-store candidate; earliest wins ties."""
    vec = store.get(word)
    if vec is None or not np.any(vec):
        return None
    best = None
    for cand in candidates:
        other = store.get(cand)
        if other is None or not np.any(other):
            continue
        sim = cosine(vec, other)
        if best is None or sim > best[1]:
            best = (cand, sim)
    return best

