"""Instance generators. Every random instance is seeded and exact."""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

import numpy as np

from .core import BGTInstance, normalize, to_rational

PROFILES = ("uniform", "dyadic", "s2-heavy", "small-growth", "boundary")

DYADIC16_GROWTHS = tuple(
    Fraction(1, d) for d in (1, 1, 1, 1, 2, 2, 2, 2, 2, 2, 2, 4, 4, 4, 8, 16)
)
GARDEN16_GROWTHS = tuple(
    Fraction(s)
    for s in (
        "1 0.83 0.6 0.55 0.45 0.4 0.32 0.29 0.28 0.27 0.26 0.22 0.16 0.15 0.1 0.05".split()
    )
)

SMALL_GROWTH_MASS = 50


def dyadic16_instance() -> BGTInstance:
    return BGTInstance.from_growths(DYADIC16_GROWTHS)


def garden16_instance() -> BGTInstance:
    return BGTInstance.from_growths(GARDEN16_GROWTHS)


def gen_lemma1(n: int, eps) -> BGTInstance:
    """One unit bamboo plus ``n`` bamboos of growth 1/2 + eps (n even)."""
    eps = to_rational(eps)
    if isinstance(n, bool) or not isinstance(n, int) or n < 2 or n % 2:
        raise ValueError(f"n must be an even integer >= 2, got {n!r}")
    if not 0 < eps < Fraction(1, 2):
        raise ValueError(f"eps must lie in (0, 1/2), got {eps}")
    return BGTInstance.from_growths([Fraction(1)] + [Fraction(1, 2) + eps] * n)


def _uniform(rng, size, den=1000) -> list[Fraction]:
    return [Fraction(int(k), den) for k in rng.integers(1, den + 1, size=size)]


def _boundary_values(rng, size) -> list[Fraction]:
    # values just above or just below a class threshold
    out = []
    for _ in range(size):
        k = int(rng.integers(0, 6))
        top = Fraction(1, 2**k)
        edge = [top, Fraction(2, 3) * top][int(rng.integers(0, 2))]
        if k == 0 and edge == 1:
            edge = Fraction(2, 3)
        delta = Fraction(int(rng.integers(1, 41)), 1000)
        v = edge * (1 + delta) if rng.integers(0, 2) else edge * (1 - delta)
        if rng.integers(0, 4) == 0:
            v = edge
        out.append(min(v, Fraction(1)))
    return out


def gen_random(n: int, seed, profile: str = "uniform") -> BGTInstance:
    """Normalized random instance (h(1) = 1) of the given profile.

    Profiles:
        uniform: growths k/1000, k uniform in 1..1000.
        dyadic: growths 2^-k, k uniform in 0..6.
        s2-heavy: h(1) = 1 and at least 80% of the other bamboos in (1/2, 2/3].
        small-growth: h(1) = 1, every other growth <= 1/25; at least ``n``
            bamboos, and more are added until the total growth reaches 50.
        boundary: growths placed on or within 4% of a class threshold.
    """
    if n < 1:
        raise ValueError("n must be positive")
    rng = np.random.default_rng(seed)
    if profile == "uniform":
        gs = _uniform(rng, n)
    elif profile == "dyadic":
        gs = [Fraction(1, 2 ** int(k)) for k in rng.integers(0, 7, size=n)]
    elif profile == "s2-heavy":
        m = -(-4 * (n - 1) // 5)
        s2 = [Fraction(int(k), 600) for k in rng.integers(301, 401, size=m)]
        gs = [Fraction(1)] + s2 + _uniform(rng, n - 1 - m)
    elif profile == "small-growth":
        gs = [Fraction(1)]
        total = Fraction(1)
        while len(gs) < n or total < SMALL_GROWTH_MASS:
            if rng.integers(0, 2):
                g = Fraction(int(rng.integers(24, 49)), 1200)
            else:
                edge = [Fraction(1, 32), Fraction(1, 48), Fraction(1, 64)][int(rng.integers(0, 3))]
                g = edge * (1 + Fraction(int(rng.integers(1, 6)), 100))
            gs.append(g)
            total += g
    elif profile == "boundary":
        gs = [Fraction(1)] + _boundary_values(rng, n - 1)
    else:
        raise ValueError(f"unknown profile {profile!r}; expected one of {PROFILES}")
    inst, _ = normalize(BGTInstance.from_growths(gs))
    return inst


def corpus(profile: str, count: int, n_range: Sequence[int], seed: int) -> list[BGTInstance]:
    """``count`` instances; instance ``i`` uses seed ``[seed, i]`` and cycles through n_range."""
    lo, hi = n_range
    return [
        gen_random(lo + i % (hi - lo + 1), [seed, i], profile) for i in range(count)
    ]
