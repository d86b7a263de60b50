"""Shared fixtures: paths to bundled sample data and canonical tables."""

from __future__ import annotations

from pathlib import Path

import pytest

from triway import InfoRow, group_classes

REPO_ROOT = Path(__file__).resolve().parent.parent
FIXTURES = REPO_ROOT / "fixtures"


@pytest.fixture(scope="session")
def tweets_path() -> Path:
    return FIXTURES / "tweets20.jsonl"


@pytest.fixture(scope="session")
def embeddings_path() -> Path:
    return FIXTURES / "toy_embeddings_10d.txt"


def table_from_pairs(pairs):
    """Build an equivalence-class table from (satire, total) pairs.

    Each pair becomes its own class with a distinct attribute key.
    """
    rows = []
    for ci, (satire, total) in enumerate(pairs):
        for k in range(total):
            rows.append(InfoRow(
                id=f"c{ci}o{k}", d_np=ci, d_qp=0, c_nern=0, b_voc=0,
                target=1 if k < satire else 0,
            ))
    return group_classes(rows)


@pytest.fixture
def canonical_table():
    """10 objects: 4 @ Pr=1, 4 @ Pr=1/2, 2 @ Pr=0."""
    return table_from_pairs([(4, 4), (2, 4), (0, 2)])
