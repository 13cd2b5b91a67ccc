"""Lower bound on the optimal elevation."""

from __future__ import annotations

from fractions import Fraction

from .core import BGTInstance


def lower_bound(inst: BGTInstance) -> Fraction:
    """max{2 h(1), sum h(j)} for n >= 2, and h(1) for a single bamboo.

    With two or more bamboos the tallest one cannot be cut every day, so it
    reaches 2 h(1); and the garden grows sum h(j) per day while a single cut
    removes at most the height of one bamboo.
    """
    if inst.n == 1:
        return inst.h1
    return max(2 * inst.h1, inst.total)
