"""Enhanced pinwheel algorithm with four growth classes and two S2 options.

Growths (relative to h(1)) are classified as

* ``S1``: 2/3 < h <= 1, rounded to 1;
* ``S2``: 1/2 < h <= 2/3, rounded to 1 (option A) or 1/2 (option B);
* ``S3``: (2/3) 2^-k < h <= 2^-k, k >= 1, rounded to 2^-k;
* ``S4``: 2^-(k+1) < h <= (2/3) 2^-k, k >= 1, rounded to (2/3) 2^-k.

S3 and S4 are each packed into unit bins; what does not fill a whole bin
(plus the odd S2 bamboo under option B) is packed into extra remainder
bins. Option A guarantees elevation ``alpha * h(1)``; option B rounds S2 at
1/2, so its bamboos are cut every ``2 alpha`` days, giving
``2 h(j*) alpha`` where ``j*`` is the largest S2 growth.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .core import BGTInstance, Partition, TrimPlan
from .cycles import is_schedulable

log = logging.getLogger(__name__)

TWO_THIRDS = Fraction(2, 3)
HALF = Fraction(1, 2)


@dataclass(frozen=True)
class ClassifiedBamboo:
    bamboo: int
    subset: str
    k: Optional[int]
    h_dd_a: Fraction
    h_dd_b: Fraction

    @property
    def deadline_a(self) -> int:
        return _deadline(self.h_dd_a)

    @property
    def deadline_b(self) -> int:
        return _deadline(self.h_dd_b)

    def h_dd(self, option: str) -> Fraction:
        return self.h_dd_b if option == "B" else self.h_dd_a

    def deadline(self, option: str) -> int:
        return _deadline(self.h_dd(option))


def _deadline(h_dd: Fraction) -> int:
    assert h_dd.numerator == 1
    return h_dd.denominator


def classify(h: Fraction, bamboo: int = 0) -> ClassifiedBamboo:
    """Class, exponent and rounded growths of a relative growth ``h``.

    >>> classify(Fraction(32, 100)).subset, classify(Fraction(32, 100)).h_dd_a
    ('S4', Fraction(1, 3))
    """
    h = Fraction(h)
    if not 0 < h <= 1:
        raise ValueError(f"relative growth {h} outside (0, 1]")
    if h > TWO_THIRDS:
        return ClassifiedBamboo(bamboo, "S1", None, Fraction(1), Fraction(1))
    if h > HALF:
        return ClassifiedBamboo(bamboo, "S2", None, Fraction(1), HALF)
    # 2^-(k+1) < h <= 2^-k with k >= 1
    k = (h.denominator // h.numerator).bit_length() - 1
    top = Fraction(1, 1 << k)
    assert k >= 1 and top / 2 < h <= top
    if h > TWO_THIRDS * top:
        return ClassifiedBamboo(bamboo, "S3", k, top, top)
    low = TWO_THIRDS * top
    return ClassifiedBamboo(bamboo, "S4", k, low, low)


@dataclass(frozen=True)
class PackingResult:
    full_bins: tuple[tuple[int, ...], ...]
    remainder: tuple[int, ...]

    @property
    def pi(self) -> int:
        return len(self.full_bins)


def pack_structured(items: Sequence[ClassifiedBamboo], option: str = "A") -> PackingResult:
    """Fill unit bins with S3 (or S4) items, heaviest first.

    Rounded growths within one class are 2^-k (or (2/3) 2^-k) multiples, so
    in non-increasing order the open bin's load is a multiple of the next
    item and every bin closes at exactly one. The open bin left at the end
    is the remainder.
    """
    subsets = {it.subset for it in items}
    if len(subsets) > 1 or subsets - {"S3", "S4"}:
        raise ValueError(f"structured packing needs one of S3/S4, got {sorted(subsets)}")
    order = sorted(items, key=lambda it: (-it.h_dd(option), it.bamboo))
    full: list[tuple[int, ...]] = []
    cur: list[int] = []
    load = Fraction(0)
    for it in order:
        load += it.h_dd(option)
        assert load <= 1, "structured fill overflowed"
        cur.append(it.bamboo)
        if load == 1:
            full.append(tuple(cur))
            cur, load = [], Fraction(0)
    total = sum((it.h_dd(option) for it in items), Fraction(0))
    assert len(full) == math.floor(total)
    return PackingResult(tuple(full), tuple(cur))


@dataclass(frozen=True)
class RemainderPacking:
    bins: tuple[tuple[int, ...], ...]
    formula_bins: int
    strategy: str

    @property
    def count(self) -> int:
        return len(self.bins)


def _bin_ok(deadlines: Sequence[int]) -> bool:
    return sum((Fraction(1, d) for d in deadlines), Fraction(0)) <= 1 and is_schedulable(deadlines)


def _ffd(pool: Sequence[tuple[int, Fraction]]) -> list[list[tuple[int, Fraction]]]:
    bins: list[list[tuple[int, Fraction]]] = []
    for item in sorted(pool, key=lambda p: (-p[1], p[0])):
        for b in bins:
            if _bin_ok([_deadline(h) for _, h in b] + [_deadline(item[1])]):
                b.append(item)
                break
        else:
            bins.append([item])
    return bins


def _set_partitions(seq):
    if not seq:
        yield []
        return
    first, rest = seq[0], seq[1:]
    for part in _set_partitions(rest):
        yield [[first]] + part
        for i in range(len(part)):
            yield part[:i] + [[first] + part[i]] + part[i + 1:]


def _group_merge(groups: Sequence[Sequence[tuple[int, Fraction]]]) -> list[list[tuple[int, Fraction]]]:
    """Fewest bins obtained by keeping each source group whole."""
    best = [list(g) for g in groups]
    for part in _set_partitions(list(range(len(groups)))):
        if len(part) >= len(best):
            continue
        bins = [[it for gi in block for it in groups[gi]] for block in part]
        if all(_bin_ok([_deadline(h) for _, h in b]) for b in bins):
            best = bins
    return best


def pack_remainders(groups: Sequence[Sequence[ClassifiedBamboo]], option: str = "A") -> RemainderPacking:
    """Pack the leftover items of S2/S3/S4 into as few bins as found.

    First-fit decreasing by rounded growth, where an item fits a bin only if
    the bin's density stays <= 1 and it still has a member cycle. The
    result is compared with keeping each source group in bins of its own
    (optimally merged), and the smaller packing is used; a source group
    always fits one bin, so the bin count never exceeds the number of
    non-empty groups.
    """
    groups = [[(it.bamboo, it.h_dd(option)) for it in g] for g in groups if g]
    pool = [it for g in groups for it in g]
    formula = math.ceil(sum((h for _, h in pool), Fraction(0)))
    if not pool:
        return RemainderPacking((), 0, "empty")
    ffd = _ffd(pool)
    merged = _group_merge(groups)
    if len(ffd) <= len(merged):
        bins, strategy = ffd, "ffd"
    else:
        bins, strategy = merged, "groups"
    assert len(bins) <= max(formula, len(groups))
    if len(bins) > formula:
        log.debug("remainder needs %d bins, ceiling predicts %d", len(bins), formula)
    return RemainderPacking(tuple(tuple(m for m, _ in b) for b in bins), formula, strategy)


def _parts_from(bins, lookup: dict, option: str, kind: str) -> list[Partition]:
    out = []
    for b in bins:
        hs = tuple(lookup[m].h_dd(option) for m in b)
        out.append(Partition(tuple(b), hs, tuple(_deadline(h) for h in hs), kind))
    return out


def classify_instance(inst: BGTInstance) -> list[ClassifiedBamboo]:
    return [classify(h, j) for j, h in enumerate(inst.relative())]


def _subsets(classes: Sequence[ClassifiedBamboo]) -> dict[str, list[ClassifiedBamboo]]:
    out: dict[str, list[ClassifiedBamboo]] = {"S1": [], "S2": [], "S3": [], "S4": []}
    for c in classes:
        out[c.subset].append(c)
    return out


def _build(inst: BGTInstance, option: str) -> TrimPlan:
    classes = classify_instance(inst)
    lookup = {c.bamboo: c for c in classes}
    sub = _subsets(classes)
    parts: list[Partition] = []
    parts += _parts_from([(c.bamboo,) for c in sub["S1"]], lookup, option, "S1")
    leftover_s2: list[ClassifiedBamboo] = []
    if option == "A":
        parts += _parts_from([(c.bamboo,) for c in sub["S2"]], lookup, option, "S2")
    else:
        s2 = sub["S2"]
        pairs = [(s2[i].bamboo, s2[i + 1].bamboo) for i in range(0, len(s2) - 1, 2)]
        parts += _parts_from(pairs, lookup, option, "S2")
        if len(s2) % 2:
            leftover_s2 = [s2[-1]]
    p3 = pack_structured(sub["S3"], option) if sub["S3"] else PackingResult((), ())
    p4 = pack_structured(sub["S4"], option) if sub["S4"] else PackingResult((), ())
    rem = pack_remainders(
        [leftover_s2, [lookup[m] for m in p3.remainder], [lookup[m] for m in p4.remainder]],
        option,
    )
    # remainder partitions sit between the S3 and S4 bins, as in the worked example
    parts += _parts_from(p3.full_bins, lookup, option, "S3")
    parts += _parts_from(rem.bins, lookup, option, "R")
    parts += _parts_from(p4.full_bins, lookup, option, "S4")
    alpha = len(parts)
    j_star = sub["S2"][0].bamboo if sub["S2"] else None
    if option == "A":
        z = alpha * inst.h1
    else:
        z = 2 * inst.growths[j_star] * alpha
    notes = ()
    if rem.count > rem.formula_bins:
        notes = (f"remainder used {rem.count} bins, ceiling formula gives {rem.formula_bins}",)
    return TrimPlan(
        tuple(parts), option, z, j_star, rem.count, rem.formula_bins, rem.strategy, notes
    )


def plan_option_a(inst: BGTInstance) -> TrimPlan:
    """Every S2 bamboo gets a partition of its own; z = alpha * h(1)."""
    return _build(inst, "A")


def plan_option_b(inst: BGTInstance) -> Optional[TrimPlan]:
    """S2 bamboos paired two per partition; None when S2 is empty."""
    if not any(c.subset == "S2" for c in classify_instance(inst)):
        return None
    return _build(inst, "B")


def run_pw2(inst: BGTInstance) -> tuple[TrimPlan, Fraction]:
    """Better of the two options; option A on ties."""
    a = plan_option_a(inst)
    b = plan_option_b(inst)
    if b is not None and b.z < a.z:
        return b, b.z
    return a, a.z


def both_options(inst: BGTInstance) -> tuple[TrimPlan, Optional[TrimPlan]]:
    return plan_option_a(inst), plan_option_b(inst)


__all__ = [
    "ClassifiedBamboo",
    "PackingResult",
    "RemainderPacking",
    "both_options",
    "classify",
    "classify_instance",
    "pack_remainders",
    "pack_structured",
    "plan_option_a",
    "plan_option_b",
    "run_pw2",
]
