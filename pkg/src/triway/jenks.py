"""Natural-breaks discretization of one-dimensional data.

Break placement minimizes the total within-class sum of squared
deviations from class means. Costs are evaluated in exact rational
arithmetic (each float taken at its exact binary value), which makes
fits deterministic and makes SSD ties well defined; ties resolve to the
lexicographically smallest break vector.

Class intervals are left-open/right-closed except the first, so a break
value is the inclusive upper bound of its class.
"""

from __future__ import annotations

from bisect import bisect_left
from dataclasses import dataclass
from fractions import Fraction


class JenksError(ValueError):
    """Invalid discretization request."""


@dataclass(frozen=True)
class JenksBreaks:
    """A fitted set of natural breaks.

    ``breaks`` holds the k-1 ascending class upper bounds. ``k_reduced``
    flags fits where the data had fewer distinct values than the
    requested class count. ``ssd`` is the achieved within-class sum of
    squared deviations on the fit data.
    """

    k: int
    breaks: tuple
    data_min: float
    data_max: float
    k_reduced: bool = False
    ssd: float = 0.0


def _segment_cost(w, s1, s2, i, j) -> Fraction:
    """Exact SSD of the distinct-value segment i..j (inclusive)."""
    n = w[j + 1] - w[i]
    t1 = s1[j + 1] - s1[i]
    t2 = s2[j + 1] - s2[i]
    return t2 - t1 * t1 / n


def fit_jenks(values, k: int) -> JenksBreaks:
    """Fit k natural breaks to ``values``.

    When the data has fewer distinct values than k, the class count
    drops to the distinct count and the result is flagged ``k_reduced``.
    Raises :class:`JenksError` on empty input or k < 1.
    """
    values = [float(v) for v in values]
    if not values:
        raise JenksError("cannot fit breaks on empty data")
    if k < 1:
        raise JenksError(f"class count must be >= 1, got {k}")

    ordered = sorted(values)
    distinct: list[float] = []
    counts: list[int] = []
    for v in ordered:
        if distinct and distinct[-1] == v:
            counts[-1] += 1
        else:
            distinct.append(v)
            counts.append(1)
    d = len(distinct)
    reduced = d < k
    k = min(k, d)

    # weighted prefix sums over exact values
    w = [0]
    s1 = [Fraction(0)]
    s2 = [Fraction(0)]
    for v, c in zip(distinct, counts):
        fv = Fraction(v)
        w.append(w[-1] + c)
        s1.append(s1[-1] + c * fv)
        s2.append(s2[-1] + c * fv * fv)

    # cost[i][m]: minimal SSD partitioning distinct[i:] into m classes
    cost = [[None] * (k + 1) for _ in range(d + 1)]
    for i in range(d):
        cost[i][1] = _segment_cost(w, s1, s2, i, d - 1)
    for m in range(2, k + 1):
        for i in range(d - m + 1):
            best = None
            for e in range(i, d - m + 1):
                c = _segment_cost(w, s1, s2, i, e) + cost[e + 1][m - 1]
                if best is None or c < best:
                    best = c
            cost[i][m] = best

    # forward reconstruction; taking the smallest boundary that preserves
    # optimality yields the lexicographically smallest break vector
    breaks = []
    i, m = 0, k
    while m > 1:
        target = cost[i][m]
        for e in range(i, d - m + 1):
            if _segment_cost(w, s1, s2, i, e) + cost[e + 1][m - 1] == target:
                breaks.append(distinct[e])
                i, m = e + 1, m - 1
                break
    return JenksBreaks(
        k=k,
        breaks=tuple(breaks),
        data_min=distinct[0],
        data_max=distinct[-1],
        k_reduced=reduced,
        ssd=float(cost[0][k]),
    )


def assign_bin(b: JenksBreaks, x) -> int:
    """Bin index of ``x``: count of breaks strictly below it.

    Values below the training range land in bin 0, above it in bin k-1.
    """
    return bisect_left(b.breaks, float(x))


def within_class_ssd(values, b: JenksBreaks) -> Fraction:
    """Exact within-class SSD of ``values`` under ``b``'s bin assignment."""
    groups: dict[int, list[Fraction]] = {}
    for v in values:
        groups.setdefault(assign_bin(b, v), []).append(Fraction(float(v)))
    total = Fraction(0)
    for vals in groups.values():
        n = len(vals)
        t1 = sum(vals)
        t2 = sum(v * v for v in vals)
        total += t2 - t1 * t1 / n
    return total
