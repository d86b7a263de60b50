"""Word-embedding storage: plain-text vector files, lookups, cosine similarity.

The on-disk format is one record per line, ``token c1 c2 ... cD``, with
single-space separated ASCII decimal floats and no header.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import numpy as np


class EmbeddingError(ValueError):
    """Malformed embedding file or invalid vector operation."""


@dataclass(frozen=True)
class EmbeddingTable:
    """Token -> dense vector map with case-insensitive lookups.

    Immutable after load; safe to share across threads or processes.
    """

    dim: int
    entries: dict

    def lookup(self, token: str) -> np.ndarray | None:
        """Return the vector for ``token`` (case-insensitive) or None."""
        return self.entries.get(token.lower())

    def __contains__(self, token: str) -> bool:
        return token.lower() in self.entries

    def __len__(self) -> int:
        return len(self.entries)


def load_embeddings(path, expected_dim: int) -> EmbeddingTable:
    """Load a plain-text embedding file into an :class:`EmbeddingTable`.

    Keys are lowercased; a later duplicate of the same token overwrites
    the earlier entry. Raises :class:`EmbeddingError` for an empty file,
    a line with the wrong component count, or an unparseable component
    (the message names the offending line number).
    """
    if expected_dim <= 0:
        raise EmbeddingError(f"expected_dim must be positive, got {expected_dim}")
    path = Path(path)
    entries: dict[str, np.ndarray] = {}
    with path.open("r", encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            parts = line.rstrip("\n").split(" ")
            if len(parts) != expected_dim + 1:
                raise EmbeddingError(
                    f"dimension mismatch at line {lineno} of {path}: "
                    f"expected {expected_dim} components, got {len(parts) - 1}"
                )
            try:
                vec = np.array([float(p) for p in parts[1:]], dtype=np.float64)
            except ValueError:
                raise EmbeddingError(
                    f"unparseable float at line {lineno} of {path}"
                ) from None
            entries[parts[0].lower()] = vec
    if not entries:
        raise EmbeddingError(f"empty embedding file: {path}")
    return EmbeddingTable(dim=expected_dim, entries=entries)


def cosine(u, v) -> float:
    """Cosine similarity of two vectors, clamped to [-1, 1].

    Raises :class:`EmbeddingError` on a length mismatch or a zero vector.
    """
    u = np.asarray(u, dtype=np.float64)
    v = np.asarray(v, dtype=np.float64)
    if u.shape != v.shape:
        raise EmbeddingError(f"vector length mismatch: {u.shape} vs {v.shape}")
    norm_u = float(np.linalg.norm(u))
    norm_v = float(np.linalg.norm(v))
    if norm_u == 0.0 or norm_v == 0.0:
        raise EmbeddingError("cosine is undefined for the zero vector")
    value = float(np.dot(u, v)) / (norm_u * norm_v)
    return max(-1.0, min(1.0, value))
