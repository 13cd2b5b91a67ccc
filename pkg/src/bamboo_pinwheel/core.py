"""Exact instance representation shared by every algorithm in the package.

All growth rates, heights and bounds are :class:`fractions.Fraction` values.
Floating point never enters algorithm logic: classification thresholds such
as 2/3 are compared exactly.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Optional, Sequence

Rational = Fraction

_TOKEN_RE = re.compile(r"^[+-]?(\d+(\.\d*)?|\.\d+)(/\d+)?$")


class InstanceError(ValueError):
    """Base class for invalid instance input."""


class EmptyInstanceError(InstanceError):
    pass


class NonPositiveGrowthError(InstanceError):
    pass


class UnparsableTokenError(InstanceError):
    pass


def to_rational(value) -> Fraction:
    """Convert an int, Fraction or decimal/fraction string to a Fraction.

    Floats are rejected: ``0.83`` as a binary float is not 83/100.
    """
    if isinstance(value, bool):
        raise TypeError("booleans are not growth rates")
    if isinstance(value, (int, Fraction)):
        return Fraction(value)
    if isinstance(value, str):
        return _parse_token(value)
    raise TypeError(f"cannot convert {type(value).__name__} exactly; pass a str or Fraction")


def _parse_token(token: str) -> Fraction:
    tok = token.strip()
    if not _TOKEN_RE.match(tok):
        raise UnparsableTokenError(f"cannot parse growth rate {token!r}")
    if "/" in tok:
        num, den = tok.split("/")
        if int(den) == 0:
            raise UnparsableTokenError(f"zero denominator in {token!r}")
        return Fraction(num) / Fraction(den)
    return Fraction(tok)


def format_rational(q: Fraction) -> str:
    """Render as ``"num/den"`` (or ``"num"`` when integral)."""
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


@dataclass(frozen=True)
class BGTInstance:
    """Bamboo growth rates sorted non-increasing.

    ``growths[i]`` is the growth of the bamboo at sorted position ``i``;
    ``original_ids[i]`` is its index in the input order. ``scale`` is the
    factor that was divided out by :func:`normalize` (1 for raw instances),
    so the input growths are ``scale * growths``.
    """

    growths: tuple[Fraction, ...]
    scale: Fraction = Fraction(1)
    original_ids: tuple[int, ...] = ()

    def __post_init__(self):
        if not self.growths:
            raise EmptyInstanceError("an instance needs at least one bamboo")
        gs = tuple(Fraction(g) for g in self.growths)
        if any(g <= 0 for g in gs):
            raise NonPositiveGrowthError("all growth rates must be strictly positive")
        if any(a < b for a, b in zip(gs, gs[1:])):
            raise InstanceError("growths must be sorted non-increasing; use from_growths()")
        object.__setattr__(self, "growths", gs)
        object.__setattr__(self, "scale", Fraction(self.scale))
        ids = tuple(self.original_ids) or tuple(range(len(gs)))
        if sorted(ids) != list(range(len(gs))):
            raise InstanceError("original_ids must be a permutation of range(n)")
        object.__setattr__(self, "original_ids", ids)

    @classmethod
    def from_growths(cls, growths: Iterable) -> "BGTInstance":
        """Build from growths in any order, recording the sorting permutation.

        Ties keep input order, so sorted position ties follow original ids.
        """
        values = [to_rational(g) for g in growths]
        if not values:
            raise EmptyInstanceError("an instance needs at least one bamboo")
        for v in values:
            if v <= 0:
                raise NonPositiveGrowthError(f"non-positive growth {v}")
        order = sorted(range(len(values)), key=lambda i: -values[i])
        return cls(tuple(values[i] for i in order), Fraction(1), tuple(order))

    @property
    def n(self) -> int:
        return len(self.growths)

    @property
    def h1(self) -> Fraction:
        return self.growths[0]

    @property
    def total(self) -> Fraction:
        return sum(self.growths, Fraction(0))

    @property
    def is_normalized(self) -> bool:
        return self.growths[0] == 1

    def relative(self) -> tuple[Fraction, ...]:
        """Growths divided by h(1), i.e. the normalized growth values."""
        h1 = self.growths[0]
        return tuple(g / h1 for g in self.growths)

    def scaled(self, c) -> "BGTInstance":
        c = to_rational(c)
        if c <= 0:
            raise NonPositiveGrowthError("scale factor must be positive")
        return BGTInstance(tuple(g * c for g in self.growths), self.scale, self.original_ids)

    def __len__(self) -> int:
        return len(self.growths)


def parse_instance(text: str) -> BGTInstance:
    """Parse instance-file content into a validated, sorted instance.

    Tokens are separated by commas and/or whitespace; a line whose first
    non-blank character is ``#`` is a comment, as is anything after ``#``.

    >>> parse_instance("1, 0.5, 0.5").growths
    (Fraction(1, 1), Fraction(1, 2), Fraction(1, 2))
    """
    tokens: list[str] = []
    for line in text.splitlines():
        line = line.split("#", 1)[0]
        tokens.extend(t for t in re.split(r"[,\s]+", line) if t)
    if not tokens:
        raise EmptyInstanceError("instance file lists no growth rates")
    values = [_parse_token(t) for t in tokens]
    for tok, v in zip(tokens, values):
        if v <= 0:
            raise NonPositiveGrowthError(f"growth {tok!r} is not strictly positive")
    return BGTInstance.from_growths(values)


def serialize_instance(inst: BGTInstance, original_order: bool = False) -> str:
    """One ``num/den`` per line; :func:`parse_instance` reads it back exactly."""
    gs: Sequence[Fraction] = inst.growths
    if original_order:
        out = [Fraction(0)] * inst.n
        for pos, oid in enumerate(inst.original_ids):
            out[oid] = gs[pos]
        gs = out
    return "\n".join(format_rational(g) for g in gs) + "\n"


def normalize(inst: BGTInstance) -> tuple[BGTInstance, Fraction]:
    """Divide every growth by h(1); return the new instance and h(1)."""
    h1 = inst.growths[0]
    norm = BGTInstance(tuple(g / h1 for g in inst.growths), inst.scale * h1, inst.original_ids)
    return norm, h1


@dataclass(frozen=True)
class Partition:
    """One slot of the outer round robin.

    ``deadlines[i]`` is the largest number of partition appearances allowed
    between consecutive cuts of ``members[i]``; it equals ``1 / h_dd[i]``.
    """

    members: tuple[int, ...]
    h_dd: tuple[Fraction, ...]
    deadlines: tuple[int, ...]
    kind: str = ""

    @property
    def load(self) -> Fraction:
        return sum(self.h_dd, Fraction(0))

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "members": list(self.members),
            "h_dd": [format_rational(h) for h in self.h_dd],
            "deadlines": list(self.deadlines),
        }


@dataclass(frozen=True)
class TrimPlan:
    """Partitions plus the guaranteed elevation ``z`` of the resulting schedule.

    ``option`` is ``"PW"`` for the classic algorithm, ``"A"`` or ``"B"`` for
    the two treatments of the (1/2, 2/3] class. Member ids are sorted
    positions in the instance. ``remainder_bins_formula`` is the ceiling of
    the remainder load (what the closed-form count predicts) and
    ``remainder_bins`` the number actually used.
    """

    partitions: tuple[Partition, ...]
    option: str
    z: Fraction
    j_star: Optional[int] = None
    remainder_bins: int = 0
    remainder_bins_formula: int = 0
    remainder_strategy: str = ""
    notes: tuple[str, ...] = field(default=())

    @property
    def alpha(self) -> int:
        return len(self.partitions)

    def members(self) -> list[int]:
        return [m for p in self.partitions for m in p.members]

    def to_dict(self, inst: Optional[BGTInstance] = None) -> dict:
        out = {
            "option": self.option,
            "alpha": self.alpha,
            "z": format_rational(self.z),
            "j_star": self.j_star,
            "remainder_bins": self.remainder_bins,
            "remainder_bins_formula": self.remainder_bins_formula,
            "remainder_strategy": self.remainder_strategy,
            "partitions": [p.to_dict() for p in self.partitions],
        }
        if inst is not None:
            for pd in out["partitions"]:
                pd["original_ids"] = [inst.original_ids[m] for m in pd["members"]]
        return out
