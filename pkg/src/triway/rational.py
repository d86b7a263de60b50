"""Exact-arithmetic helpers shared across the pipeline.

Probabilities and decision thresholds are compared as exact fractions so
that boundary cases (a class probability landing exactly on a threshold)
never depend on float rounding.
"""

from __future__ import annotations

from fractions import Fraction


def to_fraction(x) -> Fraction:
    """Coerce a number or numeric string to an exact ``Fraction``.

    Floats are routed through their shortest decimal repr, so
    ``to_fraction(0.03)`` gives 3/100 rather than the exact binary
    expansion of the float. Strings accept both decimals ("0.52")
    and ratios ("13/25").
    """
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("bool is not a valid numeric value")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, float):
        return Fraction(repr(x))
    if isinstance(x, str):
        return Fraction(x.strip())
    raise TypeError(f"cannot convert {type(x).__name__} to Fraction")


def fraction_str(f: Fraction) -> str:
    """Render a fraction as a decimal string when it terminates, else "p/q".

    Round-trips exactly through ``to_fraction``.
    """
    den = f.denominator
    twos = fives = 0
    while den % 2 == 0:
        den //= 2
        twos += 1
    while den % 5 == 0:
        den //= 5
        fives += 1
    if den != 1:
        return f"{f.numerator}/{f.denominator}"
    digits = max(twos, fives)
    if digits == 0:
        return str(f.numerator)
    scaled = f.numerator * 10**digits // f.denominator
    sign = "-" if scaled < 0 else ""
    body = str(abs(scaled)).rjust(digits + 1, "0")
    return f"{sign}{body[:-digits]}.{body[-digits:]}"
