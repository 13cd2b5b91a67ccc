"""Executable schedules: round robin over partitions, member cycles inside.

A partition with members of deadlines ``d_i`` (in partition appearances)
gets a finite *member cycle*; at its ``m``-th appearance the partition cuts
``cycle[m % len(cycle)]``. Day ``t`` belongs to partition ``t % alpha``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from .core import BGTInstance, TrimPlan


class CapacityError(ValueError):
    """Sum of 1/deadline over a bin exceeds one."""


class UnschedulableBinError(ValueError):
    """No member cycle meeting every deadline was found for a bin."""


def _density(deadlines: Sequence[int]) -> Fraction:
    return sum((Fraction(1, d) for d in deadlines), Fraction(0))


def _is_pow2(d: int) -> bool:
    return d > 0 and d & (d - 1) == 0


def _is_triadic(d: int) -> bool:
    return d % 3 == 0 and _is_pow2(d // 3)


def _check_input(deadlines: Sequence[int], ids):
    if not deadlines:
        raise ValueError("a bin needs at least one member")
    if any(d < 1 for d in deadlines):
        raise ValueError("deadlines must be positive integers")
    if _density(deadlines) > 1:
        raise CapacityError(f"density {_density(deadlines)} exceeds 1")
    ids = list(range(len(deadlines))) if ids is None else list(ids)
    if len(ids) != len(deadlines):
        raise ValueError("ids and deadlines differ in length")
    return ids


def _by_weight(ids, deadlines):
    # largest h'' first; input order breaks ties
    return sorted(zip(ids, deadlines), key=lambda p: p[1])


def minimal_period(cycle: Sequence) -> list:
    """Shortest block whose repetition equals ``cycle``."""
    n = len(cycle)
    for p in range(1, n + 1):
        if n % p == 0 and all(cycle[i] == cycle[i % p] for i in range(n)):
            return list(cycle[:p])
    return list(cycle)


def _interleave(parts: Sequence[Sequence]) -> list:
    """Round robin over sub-cycles: slot ``t % k`` advances its own cycle."""
    k = len(parts)
    length = math.lcm(*(len(p) for p in parts))
    out = []
    for i in range(length):
        for p in parts:
            out.append(p[i % len(p)])
    assert len(out) == k * length
    return out


def _dyadic(items: list[tuple]) -> list:
    if len(items) == 1:
        return [items[0][0]]
    halves: list[list[tuple]] = [[], []]
    loads = [Fraction(0), Fraction(0)]
    for ident, d in items:
        side = 0 if loads[0] <= loads[1] else 1
        # a group of two or more members has every deadline >= 2
        assert d >= 2 and d % 2 == 0
        halves[side].append((ident, d // 2))
        loads[side] += Fraction(2, d)
        assert loads[side] <= 1
    return _interleave([_dyadic(halves[0]), _dyadic(halves[1])])


def build_cycle_dyadic(deadlines: Sequence[int], ids: Optional[Sequence] = None) -> list:
    """Member cycle for power-of-two deadlines by recursive halving.

    The members are split between the even and odd appearances, heavier
    members first, each going to the lighter half; every half is then
    solved with its deadlines halved. A lone member is cut at every
    appearance of its half, so under-full bins cut some members more often
    than needed.

    >>> build_cycle_dyadic([2, 4, 4], "ABC")
    ['A', 'B', 'A', 'C']
    """
    ids = _check_input(deadlines, ids)
    if not all(_is_pow2(d) for d in deadlines):
        raise ValueError("dyadic builder needs power-of-two deadlines")
    return minimal_period(_dyadic(_by_weight(ids, deadlines)))


def build_cycle_triadic(deadlines: Sequence[int], ids: Optional[Sequence] = None) -> list:
    """Member cycle for deadlines of the form 3 * 2^m.

    Appearances are split into three residue classes mod 3. Members are put
    first-fit (heaviest first) into the classes, weight 3/d each, and every
    class is scheduled with the dyadic builder on deadlines d/3. Empty
    classes repeat the heaviest member.

    >>> build_cycle_triadic([3, 3, 6, 6], "ABCD")
    ['A', 'B', 'C', 'A', 'B', 'D']
    """
    ids = _check_input(deadlines, ids)
    if not all(_is_triadic(d) for d in deadlines):
        raise ValueError("triadic builder needs deadlines 3 * 2^m")
    items = _by_weight(ids, deadlines)
    slots: list[list[tuple]] = [[], [], []]
    loads = [Fraction(0)] * 3
    for ident, d in items:
        for s in range(3):
            if loads[s] + Fraction(3, d) <= 1:
                slots[s].append((ident, d // 3))
                loads[s] += Fraction(3, d)
                break
        else:  # pragma: no cover - dyadic weights with total <= 3 always fit
            raise AssertionError("triadic slot assignment overflowed")
    heaviest = items[0][0]
    sub = [_dyadic(s) if s else [heaviest] for s in slots]
    return minimal_period(_interleave(sub))


def build_cycle_mixed(
    deadlines: Sequence[int],
    ids: Optional[Sequence] = None,
    max_steps: int = 1_000_000,
) -> list:
    """Deadline-greedy member cycle for arbitrary integer deadlines.

    At every appearance all ages grow by one and the member with the largest
    ``age / deadline`` is cut (ties: larger age, then earlier member). The
    run stops at the first repeated age vector and the repeating part is
    checked against the deadlines.

    Raises:
        UnschedulableBinError: the greedy cycle misses a deadline, or no
            repetition appeared within the step cap.
    """
    ids = _check_input(deadlines, ids)
    m = len(deadlines)
    cap = min(max_steps, math.prod(deadlines) + 1)
    ages = tuple([0] * m)
    seen = {ages: 0}
    picks: list[int] = []
    for step in range(1, cap + 1):
        grown = [a + 1 for a in ages]
        best = max(range(m), key=lambda i: (Fraction(grown[i], deadlines[i]), grown[i], -i))
        grown[best] = 0
        picks.append(best)
        ages = tuple(grown)
        if ages in seen:
            local = picks[seen[ages]:]
            break
        seen[ages] = step
    else:
        raise UnschedulableBinError("greedy found no repeating state within the step cap")
    gaps = cycle_gaps(local, range(m))
    bad = [i for i in range(m) if gaps[i] > deadlines[i]]
    if bad:
        raise UnschedulableBinError(
            f"greedy cycle misses deadlines of members {[ids[i] for i in bad]}"
        )
    return minimal_period([ids[i] for i in local])


def cycle_gaps(cycle: Sequence, members) -> dict:
    """Largest cyclic distance between consecutive occurrences; inf if absent."""
    n = len(cycle)
    out = {}
    for mem in members:
        pos = [i for i, c in enumerate(cycle) if c == mem]
        if not pos:
            out[mem] = math.inf
            continue
        gaps = [b - a for a, b in zip(pos, pos[1:])] + [pos[0] + n - pos[-1]]
        out[mem] = max(gaps)
    return out


def _meets(cycle, ids, deadlines) -> bool:
    gaps = cycle_gaps(cycle, ids)
    return all(gaps[i] <= d for i, d in zip(ids, deadlines))


def _structured(ids: list, ds: list[int]) -> Optional[list]:
    """Cycle from the dyadic/triadic builders, directly or after splitting."""
    if all(_is_pow2(d) for d in ds):
        return _dyadic(_by_weight(ids, ds))
    if all(_is_triadic(d) for d in ds):
        return build_cycle_triadic(ds, ids)
    down2 = [1 << (d.bit_length() - 1) for d in ds]
    if _density(down2) <= 1:
        return _dyadic(_by_weight(ids, down2))
    if all(d >= 3 for d in ds):
        down3 = [3 * (1 << ((d // 3).bit_length() - 1)) for d in ds]
        if _density(down3) <= 1:
            return build_cycle_triadic(down3, ids)
    if len(ds) >= 2 and all(d % 2 == 0 for d in ds):
        for halves in _halvings(ids, ds):
            subs = [_structured(h_ids, [d // 2 for d in h_ds]) for h_ids, h_ds in halves]
            if all(sub is not None for sub in subs):
                return _interleave(subs)
    return None


def _halvings(ids: list, ds: list[int]):
    """Candidate splits of a bin between even and odd appearances.

    Each half takes density at most 1/2. Tried in order: heaviest member to
    the lighter half, then one family (power-of-two deadlines or not) packed
    into the first half before the other.
    """
    items = _by_weight(ids, ds)
    dy = [it for it in items if _is_pow2(it[1])]
    other = [it for it in items if not _is_pow2(it[1])]
    heavy_first = sorted((dy, other), key=lambda g: -_density([d for _, d in g]))
    orders = [(items, True), (heavy_first[0] + heavy_first[1], False),
              (heavy_first[1] + heavy_first[0], False)]
    for order, balanced in orders:
        halves: list[tuple[list, list[int]]] = [([], []), ([], [])]
        loads = [Fraction(0), Fraction(0)]
        for ident, d in order:
            w = Fraction(1, d)
            if balanced:
                side = 0 if loads[0] <= loads[1] else 1
            else:
                side = 0 if loads[0] + w <= Fraction(1, 2) else 1
            halves[side][0].append(ident)
            halves[side][1].append(d)
            loads[side] += w
        if max(loads) <= Fraction(1, 2) and all(h[0] for h in halves):
            yield halves


def build_cycle(deadlines: Sequence[int], ids: Optional[Sequence] = None) -> list:
    """Pick a builder for the bin and return a verified member cycle.

    Pure dyadic and pure triadic bins use their structured builders. Mixed
    bins try, in order: tightening every deadline to a power of two, or to
    3 * 2^m, when the tightened density stays <= 1; splitting the members
    between even and odd appearances (all deadlines even) and solving both
    halves the same way; and finally the deadline-greedy rule.
    """
    ids = _check_input(deadlines, ids)
    ds = list(deadlines)
    cyc = _structured(ids, ds)
    if cyc is None:
        return build_cycle_mixed(ds, ids)
    cyc = minimal_period(cyc)
    assert _meets(cyc, ids, ds)
    return cyc


def is_schedulable(deadlines: Sequence[int]) -> bool:
    """Whether :func:`build_cycle` succeeds on these deadlines."""
    try:
        build_cycle(deadlines)
    except (CapacityError, UnschedulableBinError):
        return False
    return True


@dataclass(frozen=True)
class PeriodicSchedule:
    """Perpetual schedule; day ``t`` (0-based) cuts :meth:`cut` ``(t)``."""

    cycles: tuple[tuple[int, ...], ...]
    period: int = field(init=False)

    def __post_init__(self):
        if not self.cycles or any(not c for c in self.cycles):
            raise ValueError("every partition needs a non-empty cycle")
        object.__setattr__(self, "cycles", tuple(tuple(c) for c in self.cycles))
        object.__setattr__(
            self, "period", len(self.cycles) * math.lcm(*(len(c) for c in self.cycles))
        )

    @property
    def alpha(self) -> int:
        return len(self.cycles)

    def partition_of_day(self, t: int) -> int:
        return t % self.alpha

    def cut(self, t: int) -> int:
        q, r = divmod(t, len(self.cycles))
        cyc = self.cycles[r]
        return cyc[q % len(cyc)]

    __call__ = cut

    def dump(self, days: Optional[int] = None, id_map: Optional[Sequence[int]] = None) -> str:
        """Text table of the first ``days`` days, one round of partitions per row.

        Cells read ``P<i>:[b<j>]`` with 1-based partition and bamboo labels.
        ``id_map`` relabels sorted positions (e.g. to original ids).
        """
        days = self.period if days is None else days
        rows = []
        for start in range(0, days, self.alpha):
            cells = []
            for t in range(start, min(start + self.alpha, days)):
                b = self.cut(t)
                b = id_map[b] if id_map is not None else b
                cells.append(f"P{t % self.alpha + 1}:[b{b + 1}]")
            rows.append(" ".join(cells))
        return "\n".join(rows) + "\n"


def build_schedule(plan: TrimPlan) -> PeriodicSchedule:
    """Member cycle for every partition of the plan, in plan order."""
    cycles = []
    for part in plan.partitions:
        cycles.append(build_cycle(part.deadlines, part.members))
    return PeriodicSchedule(tuple(cycles))


@dataclass
class VerificationReport:
    passed: bool
    z: Fraction
    gap_days: dict[int, int]
    height_bound: dict[int, Fraction]
    max_bound: Fraction
    violations: list[str]

    def summary(self) -> str:
        head = "PASS" if self.passed else "FAIL"
        return f"{head}: max implied height {self.max_bound} vs z = {self.z}" + (
            "" if self.passed else "; " + "; ".join(self.violations)
        )


def verify_schedule(plan: TrimPlan, sched: PeriodicSchedule, inst: BGTInstance) -> VerificationReport:
    """Exhaustively check one period of ``sched`` against ``plan``.

    For every bamboo the largest cyclic gap between its cut days is
    measured by walking the period day by day. A bamboo passes if the gap
    is within ``alpha * deadline`` and ``gap * h(j) <= z``.
    """
    violations: list[str] = []
    if sched.alpha != plan.alpha:
        violations.append(f"schedule has {sched.alpha} partitions, plan has {plan.alpha}")
    period = sched.period
    days: dict[int, list[int]] = {}
    for t in range(period):
        days.setdefault(sched.cut(t), []).append(t)
    deadline_of = {}
    for part in plan.partitions:
        for mem, d in zip(part.members, part.deadlines):
            if mem in deadline_of:
                violations.append(f"bamboo {mem} appears in more than one partition")
            deadline_of[mem] = d
    gap_days: dict[int, int] = {}
    bound: dict[int, Fraction] = {}
    for j in range(inst.n):
        ts = days.get(j)
        if not ts:
            violations.append(f"bamboo {j} is never cut")
            continue
        gaps = [b - a for a, b in zip(ts, ts[1:])] + [ts[0] + period - ts[-1]]
        g = max(gaps)
        gap_days[j] = g
        bound[j] = g * inst.growths[j]
        if j not in deadline_of:
            violations.append(f"bamboo {j} is cut but belongs to no partition")
        elif g > sched.alpha * deadline_of[j]:
            violations.append(
                f"bamboo {j}: gap {g} days exceeds {deadline_of[j]} appearances x {sched.alpha}"
            )
        if bound[j] > plan.z:
            violations.append(f"bamboo {j}: height {bound[j]} exceeds z = {plan.z}")
    max_bound = max(bound.values()) if bound else Fraction(0)
    return VerificationReport(not violations, plan.z, gap_days, bound, max_bound, violations)
