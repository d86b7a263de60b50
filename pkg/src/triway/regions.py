"""Probabilistic three-way decision regions and their quality measures.

A threshold pair (alpha, beta) with 0 <= beta < alpha <= 1 splits the
equivalence classes into acceptance (satirical), rejection (legitimate),
and boundary (deferral) regions. Accuracy counts correct labels among
decided objects; coverage counts the decided share of the universe.
All comparisons are exact rational arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .info_table import EquivalenceClassTable
from .rational import fraction_str, to_fraction


class RegionError(ValueError):
    """Invalid thresholds or an undefined measure."""


@dataclass(frozen=True)
class ThresholdPair:
    """Acceptance/rejection thresholds, stored as exact fractions."""

    alpha: Fraction
    beta: Fraction

    def __post_init__(self):
        object.__setattr__(self, "alpha", to_fraction(self.alpha))
        object.__setattr__(self, "beta", to_fraction(self.beta))
        if not (0 <= self.beta < self.alpha <= 1):
            raise RegionError(
                f"thresholds must satisfy 0 <= beta < alpha <= 1, got "
                f"alpha={fraction_str(self.alpha)}, beta={fraction_str(self.beta)}"
            )

    def __str__(self):
        return f"({fraction_str(self.alpha)}, {fraction_str(self.beta)})"


@dataclass(frozen=True)
class Trisection:
    """Disjoint class-index sets covering the whole table."""

    pos: frozenset
    neg: frozenset
    bnd: frozenset


def trisect(table: EquivalenceClassTable, t: ThresholdPair) -> Trisection:
    """Assign each class to pos (Pr >= alpha), neg (Pr <= beta), or bnd."""
    pos, neg, bnd = set(), set(), set()
    for i, cls in enumerate(table.classes):
        p = cls.conditional
        if p >= t.alpha:
            pos.add(i)
        elif p <= t.beta:
            neg.add(i)
        else:
            bnd.add(i)
    return Trisection(pos=frozenset(pos), neg=frozenset(neg), bnd=frozenset(bnd))


def accuracy(table: EquivalenceClassTable, tri: Trisection) -> Fraction:
    """Correctly decided objects over all decided objects, exact.

    Raises :class:`RegionError` when no class is decided (the measure's
    denominator would be zero).
    """
    correct = 0
    decided = 0
    for i in tri.pos:
        cls = table.classes[i]
        correct += cls.satire_count
        decided += cls.total
    for i in tri.neg:
        cls = table.classes[i]
        correct += cls.total - cls.satire_count
        decided += cls.total
    if decided == 0:
        raise RegionError("undefined accuracy: no class is decided")
    return Fraction(correct, decided)


def coverage(table: EquivalenceClassTable, tri: Trisection) -> Fraction:
    """Decided objects over the universe size, exact."""
    decided = sum(table.classes[i].total for i in tri.pos | tri.neg)
    return Fraction(decided, table.universe_size)
