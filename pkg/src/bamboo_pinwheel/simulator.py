"""Day-by-day execution of a cutting policy.

Each day every bamboo grows by its rate, heights are recorded, and then the
bamboo chosen by the policy is cut to zero. Heights are measured after
growth and before the cut, so a bamboo cut every ``d`` days peaks at
exactly ``d * h(j)``.

A bamboo's height is its age (days since its last cut) times its growth, so
the simulations track integer ages and convert to exact heights at the end.
"""

from __future__ import annotations

import csv
import json
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional, Sequence

import numba
import numpy as np

from .core import BGTInstance, format_rational


class InvalidCutError(ValueError):
    """The policy named a bamboo outside the instance."""


@dataclass
class SimulationReport:
    horizon: int
    elevation: Fraction
    per_bamboo_max: list[Fraction]
    period_detected: Optional[int] = None
    trace: Optional[list[tuple[int, int, Fraction]]] = None

    def to_dict(self) -> dict:
        return {
            "horizon": self.horizon,
            "elevation": format_rational(self.elevation),
            "per_bamboo_max": [format_rational(h) for h in self.per_bamboo_max],
            "period_detected": self.period_detected,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    def write_trace_csv(self, path) -> None:
        if self.trace is None:
            raise ValueError("simulation was run without trace=True")
        with open(path, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(["day", "cut_id", "max_height"])
            for day, cut, height in self.trace:
                w.writerow([day, cut, format_rational(height)])


def _report(inst, horizon, max_age, period=None, trace=None) -> SimulationReport:
    per = [a * g for a, g in zip(max_age, inst.growths)]
    return SimulationReport(horizon, max(per), per, period, trace)


def simulate(
    inst: BGTInstance,
    policy: Callable[[int], int],
    horizon: int,
    trace: bool = False,
) -> SimulationReport:
    """Run a precomputed policy ``day -> bamboo id`` for ``horizon`` days."""
    if horizon < 1:
        raise ValueError("horizon must be at least one day")
    n = inst.n
    last = [-1] * n
    max_age = [0] * n
    rows = [] if trace else None
    for t in range(horizon):
        j = policy(t)
        if not isinstance(j, (int, np.integer)) or not 0 <= j < n:
            raise InvalidCutError(f"day {t}: policy returned {j!r}")
        if rows is not None:
            rows.append((t, int(j), max((t - last[i]) * inst.growths[i] for i in range(n))))
        age = t - last[j]
        if age > max_age[j]:
            max_age[j] = age
        last[j] = t
    end = horizon - 1
    for i in range(n):
        if end - last[i] > max_age[i]:
            max_age[i] = end - last[i]
    period = getattr(policy, "period", None)
    return _report(inst, horizon, max_age, period, rows)


def simulate_online(
    inst: BGTInstance,
    strategy: Callable[[Sequence[Fraction]], int],
    horizon: int,
) -> SimulationReport:
    """Run a strategy that sees the post-growth heights every day.

    Reference implementation with exact heights; :func:`reduce_max` is the
    fast path for ReduceMax.
    """
    if horizon < 1:
        raise ValueError("horizon must be at least one day")
    n = inst.n
    heights = [Fraction(0)] * n
    best = [Fraction(0)] * n
    for t in range(horizon):
        heights = [h + g for h, g in zip(heights, inst.growths)]
        for i in range(n):
            if heights[i] > best[i]:
                best[i] = heights[i]
        j = strategy(heights)
        if not isinstance(j, (int, np.integer)) or not 0 <= j < n:
            raise InvalidCutError(f"day {t}: strategy returned {j!r}")
        heights[j] = Fraction(0)
    return SimulationReport(horizon, max(best), best, None)


def reduce_max_policy(heights: Sequence) -> int:
    """Index of a tallest bamboo; ties go to the smallest index."""
    best = 0
    for i in range(1, len(heights)):
        if heights[i] > heights[best]:
            best = i
    return best


def default_reduce_max_horizon(inst: BGTInstance) -> int:
    rel_min = inst.growths[-1] / inst.growths[0]
    return max(10_000, 20 * inst.n * math.ceil(1 / rel_min))


@numba.njit(cache=True)
def _reduce_max_kernel(units, ring, offsets, sizes, n, horizon, detect):
    # bamboos sharing a growth value are cut in a fixed rotation, so only the
    # head of each class competes for the daily maximum
    n_classes = units.shape[0]
    last = np.full(n, -1, dtype=np.int64)
    max_age = np.zeros(n, dtype=np.int64)
    heads = np.zeros(n_classes, dtype=np.int64)
    anchor = np.ones(n, dtype=np.int64)
    power = 1
    lam = 1
    period = -1
    end = horizon - 1
    for t in range(horizon):
        best_c = -1
        best_h = -1
        best_j = n
        for c in range(n_classes):
            j = ring[offsets[c] + heads[c]]
            h = (t - last[j]) * units[c]
            if h > best_h or (h == best_h and j < best_j):
                best_c = c
                best_h = h
                best_j = j
        age = t - last[best_j]
        if age > max_age[best_j]:
            max_age[best_j] = age
        last[best_j] = t
        heads[best_c] = (heads[best_c] + 1) % sizes[best_c]
        if detect:
            same = True
            for j in range(n):
                if t - last[j] != anchor[j]:
                    same = False
                    break
            if same:
                period = lam
                end = t
                break
            if lam == power:
                for j in range(n):
                    anchor[j] = t - last[j]
                power *= 2
                lam = 0
            lam += 1
    for j in range(n):
        if end - last[j] > max_age[j]:
            max_age[j] = end - last[j]
    return max_age, period


def reduce_max(inst: BGTInstance, horizon: Optional[int] = None, detect_period: bool = True) -> SimulationReport:
    """ReduceMax in integer growth units.

    Growths are scaled to integers over their common denominator so heights
    are ``age * units`` and the daily argmax is exact. The policy depends
    only on the age vector: once an age vector repeats (Brent's cycle
    detection) the rest of the horizon replays visited states and the run
    stops early.
    """
    horizon = default_reduce_max_horizon(inst) if horizon is None else horizon
    if horizon < 1:
        raise ValueError("horizon must be at least one day")
    den = math.lcm(*(g.denominator for g in inst.growths))
    units = [int(g * den) for g in inst.growths]
    if max(units) * (horizon + 1) >= 2**62:
        return reduce_max_reference(inst, horizon, detect_period)
    classes: dict[int, list[int]] = {}
    for j, u in enumerate(units):
        classes.setdefault(u, []).append(j)
    keys = list(classes)
    ring = np.array([j for u in keys for j in classes[u]], dtype=np.int64)
    sizes = np.array([len(classes[u]) for u in keys], dtype=np.int64)
    offsets = np.concatenate(([0], np.cumsum(sizes)[:-1])).astype(np.int64)
    max_age, period = _reduce_max_kernel(
        np.array(keys, dtype=np.int64), ring, offsets, sizes, inst.n, horizon, detect_period
    )
    return _report(inst, horizon, [int(a) for a in max_age], None if period < 0 else int(period))


def reduce_max_reference(inst: BGTInstance, horizon: Optional[int] = None, detect_period: bool = True) -> SimulationReport:
    """Full-scan ReduceMax on numpy arrays (object dtype if int64 could overflow)."""
    horizon = default_reduce_max_horizon(inst) if horizon is None else horizon
    if horizon < 1:
        raise ValueError("horizon must be at least one day")
    n = inst.n
    den = math.lcm(*(g.denominator for g in inst.growths))
    units = [int(g * den) for g in inst.growths]
    dtype = object if max(units) * (horizon + 1) >= 2**62 else np.int64
    unit_arr = np.array(units, dtype=dtype)
    ages = np.zeros(n, dtype=dtype)
    max_age = np.zeros(n, dtype=dtype)
    anchor = ages.copy()
    power = lam = 1
    period = None
    for t in range(horizon):
        ages += 1
        np.maximum(max_age, ages, out=max_age)
        # np.argmax returns the first maximum, i.e. the smallest index on ties
        j = int(np.argmax(ages * unit_arr))
        ages[j] = 0
        if detect_period:
            if np.array_equal(ages, anchor):
                period = lam
                break
            if lam == power:
                anchor = ages.copy()
                power *= 2
                lam = 0
            lam += 1
    return _report(inst, horizon, [int(a) for a in max_age], period)
