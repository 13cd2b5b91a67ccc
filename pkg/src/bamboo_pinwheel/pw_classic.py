"""Classic pinwheel algorithm: dyadic rounding and unit-bin packing."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .core import BGTInstance, Partition, TrimPlan


@dataclass(frozen=True)
class RoundedGrowth:
    bamboo: int
    h_prime: Fraction
    deadline: int

    @property
    def k(self) -> int:
        return self.deadline.bit_length() - 1


def round_up_pow2(h: Fraction, bamboo: int = 0) -> RoundedGrowth:
    """Smallest 1/2^k (k >= 0) not below ``h``.

    >>> round_up_pow2(Fraction(83, 100)).h_prime
    Fraction(1, 1)
    >>> round_up_pow2(Fraction(1, 20)).deadline
    16
    """
    h = Fraction(h)
    if not 0 < h <= 1:
        raise ValueError(f"growth {h} outside (0, 1]")
    # 1/2^(k+1) < h <= 1/2^k  <=>  2^k <= 1/h < 2^(k+1)
    k = (h.denominator // h.numerator).bit_length() - 1
    d = 1 << k
    assert Fraction(1, 2 * d) < h <= Fraction(1, d)
    return RoundedGrowth(bamboo, Fraction(1, d), d)


def build_plan_pw(inst: BGTInstance) -> TrimPlan:
    """Assign bamboos in sorted order to partitions of total h' exactly one.

    Items arrive with non-increasing dyadic h', so a partition's load is
    always a multiple of the next item and each partition closes at exactly
    one; only the last may be lighter.
    """
    rel = inst.relative()
    items = [round_up_pow2(h, j) for j, h in enumerate(rel)]
    items.sort(key=lambda it: (-it.h_prime, it.bamboo))
    bins: list[list[RoundedGrowth]] = []
    load = Fraction(0)
    for it in items:
        if not bins or load == 1:
            bins.append([])
            load = Fraction(0)
        assert load + it.h_prime <= 1, "dyadic greedy fill overflowed"
        bins[-1].append(it)
        load += it.h_prime
    for b in bins[:-1]:
        assert sum(it.h_prime for it in b) == 1
    parts = tuple(
        Partition(
            tuple(it.bamboo for it in b),
            tuple(it.h_prime for it in b),
            tuple(it.deadline for it in b),
            "PW",
        )
        for b in bins
    )
    return TrimPlan(parts, "PW", len(parts) * inst.h1)
