"""Independent reference computations used to freeze and cross-check values."""

from __future__ import annotations

import itertools
from fractions import Fraction
from typing import Sequence


def covering_subset_exists(capacities: Sequence[float], demand: float) -> bool:
    """Exhaustive search: does any subset of ``capacities`` reach ``demand``?"""
    for k in range(len(capacities) + 1):
        for combo in itertools.combinations(capacities, k):
            if sum(combo) >= demand:
                return True
    return False


def exact_share(share, offered, capacity) -> Fraction:
    """Proportional share in exact rational arithmetic."""
    share, offered, capacity = (Fraction(x) for x in (share, offered, capacity))
    return share if offered <= capacity else capacity * share / offered


def bitwise_share(rates: Sequence[int], capacity: int) -> list[Fraction]:
    """Deliver capacity one unit at a time, each unit split by offered-rate weight.

    Equivalent to proportional sharing, computed without the closed form.
    """
    total = sum(rates)
    if total <= capacity:
        return [Fraction(r) for r in rates]
    delivered = [Fraction(0)] * len(rates)
    for _ in range(capacity):
        for i, r in enumerate(rates):
            delivered[i] += Fraction(r, total)
    return delivered
