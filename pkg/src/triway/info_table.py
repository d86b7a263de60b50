"""Discretized information table and exact-probability equivalence classes.

Rows sharing the same attribute tuple form an equivalence class; classes
whose conditional satire probabilities are equal as exact rationals can
be merged without changing any region-based measure.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .jenks import JenksBreaks, assign_bin

# (d_np, d_qp, c_nern, b_voc)
AttributeKey = tuple


@dataclass(frozen=True)
class InfoRow:
    """One tweet's discretized attributes and target label."""

    id: str
    d_np: int
    d_qp: int
    c_nern: int
    b_voc: int
    target: int

    def __post_init__(self):
        if self.c_nern not in (-1, 0, 1):
            raise ValueError(f"row {self.id}: c_nern must be in {{-1,0,1}}")
        if self.b_voc not in (0, 1) or self.target not in (0, 1):
            raise ValueError(f"row {self.id}: b_voc and target must be binary")
        if self.d_np < 0 or self.d_qp < 0:
            raise ValueError(f"row {self.id}: bin indices must be non-negative")

    @property
    def key(self) -> AttributeKey:
        return (self.d_np, self.d_qp, self.c_nern, self.b_voc)


@dataclass(frozen=True)
class EquivalenceClass:
    """A set of rows sharing attribute values (or merged sets of them).

    Counts stay integers; the conditional probability is the exact
    rational satire_count/total.
    """

    keys: tuple
    total: int
    satire_count: int

    def __post_init__(self):
        if self.total <= 0:
            raise ValueError("equivalence class must contain at least one object")
        if not 0 <= self.satire_count <= self.total:
            raise ValueError("satire_count must lie in [0, total]")

    @property
    def conditional(self) -> Fraction:
        """Pr(satire | class) as an exact rational."""
        return Fraction(self.satire_count, self.total)


@dataclass(frozen=True)
class EquivalenceClassTable:
    """All equivalence classes over a universe of rows."""

    classes: tuple
    universe_size: int

    def probability(self, cls: EquivalenceClass) -> Fraction:
        """Pr(class) = class size over universe size, exact."""
        return Fraction(cls.total, self.universe_size)


def build_table(records, breaks_np: JenksBreaks, breaks_qp: JenksBreaks) -> list:
    """Discretize feature records into information-table rows."""
    return [
        InfoRow(
            id=r.id,
            d_np=assign_bin(breaks_np, r.s_np),
            d_qp=assign_bin(breaks_qp, r.s_qp),
            c_nern=r.c_nern,
            b_voc=r.b_voc,
            target=r.label,
        )
        for r in records
    ]


def _ordered(classes) -> tuple:
    # descending conditional probability, then ascending key tuple
    return tuple(sorted(classes, key=lambda c: (-c.conditional, c.keys)))


def group_classes(rows) -> EquivalenceClassTable:
    """Group rows by attribute tuple into singleton-key classes."""
    if not rows:
        raise ValueError("cannot build equivalence classes from zero rows")
    counts: dict[AttributeKey, list] = {}
    for row in rows:
        entry = counts.setdefault(row.key, [0, 0])
        entry[0] += 1
        entry[1] += row.target
    classes = [
        EquivalenceClass(keys=(key,), total=total, satire_count=satire)
        for key, (total, satire) in counts.items()
    ]
    return EquivalenceClassTable(classes=_ordered(classes), universe_size=len(rows))


def merge_equal_probability(table: EquivalenceClassTable) -> EquivalenceClassTable:
    """Merge classes whose conditional probabilities are exactly equal.

    Merged classes keep the sorted list of member keys; totals and satire
    counts add up, so every region measure is unchanged.
    """
    by_prob: dict[Fraction, list] = {}
    for cls in table.classes:
        by_prob.setdefault(cls.conditional, []).append(cls)
    merged = []
    for group in by_prob.values():
        keys = tuple(sorted(k for cls in group for k in cls.keys))
        merged.append(EquivalenceClass(
            keys=keys,
            total=sum(c.total for c in group),
            satire_count=sum(c.satire_count for c in group),
        ))
    return EquivalenceClassTable(
        classes=_ordered(merged), universe_size=table.universe_size
    )


def table_to_json(table: EquivalenceClassTable) -> dict:
    """Serializable form: per-class keys/counts plus the universe size."""
    return {
        "universe": table.universe_size,
        "classes": [
            {"keys": [list(k) for k in c.keys], "total": c.total, "satire": c.satire_count}
            for c in table.classes
        ],
    }


def table_from_json(obj: dict) -> EquivalenceClassTable:
    classes = tuple(
        EquivalenceClass(
            keys=tuple(tuple(k) for k in c["keys"]),
            total=int(c["total"]),
            satire_count=int(c["satire"]),
        )
        for c in obj["classes"]
    )
    return EquivalenceClassTable(classes=classes, universe_size=int(obj["universe"]))
