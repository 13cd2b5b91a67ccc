"""Exact optimal elevation for tiny instances.

Elevation at most ``H`` means every bamboo ``j`` is cut at least every
``c_j = floor(H / h(j))`` days. The state of a schedule is its vector of
post-growth ages; cutting bamboo ``i`` maps ages ``a`` to ``a + 1`` with
``a_i`` reset to 1, and a state is admissible while ``a_j <= c_j``. A
perpetual schedule exists iff an infinite admissible walk starts at the
all-ones vector. The graph is finite, so an infinite walk exists iff a
cycle is reachable, and any such walk can be replaced by one that loops on
that cycle: the infimum over all schedules equals the best periodic one.

Every schedule's elevation is ``d * h(j)`` for some integer ``d`` and
bamboo ``j``, so the optimum is found by binary search over those values.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .bounds import lower_bound
from .core import BGTInstance
from .pw_enhanced import run_pw2

DEFAULT_MAX_BAMBOOS = 4
DEFAULT_NODE_LIMIT = 5_000_000


class OracleLimitError(RuntimeError):
    """The instance is too large for exhaustive search."""


@dataclass(frozen=True)
class OracleResult:
    value: Fraction
    witness: tuple[int, ...]
    states_explored: int


def _search(inst: BGTInstance, H: Fraction, max_bamboos: int, node_limit: int):
    if inst.n > max_bamboos:
        raise OracleLimitError(f"{inst.n} bamboos exceeds the oracle cap of {max_bamboos}")
    H = Fraction(H)
    caps = [int(H // g) for g in inst.growths]
    n = inst.n
    start = (1,) * n
    if min(caps) < 1:
        return None, 0
    succ: dict[tuple, list[tuple[int, tuple]]] = {}
    queue = deque([start])
    succ[start] = []
    while queue:
        s = queue.popleft()
        out = succ[s]
        grown = [a + 1 for a in s]
        for i in range(n):
            nxt = grown.copy()
            nxt[i] = 1
            if all(a <= c for a, c in zip(nxt, caps)):
                t = tuple(nxt)
                out.append((i, t))
                if t not in succ:
                    if len(succ) >= node_limit:
                        raise OracleLimitError(f"state space exceeds {node_limit} nodes")
                    succ[t] = []
                    queue.append(t)
    # greatest fixed point: drop states without a surviving successor
    preds: dict[tuple, list[tuple]] = {s: [] for s in succ}
    for s, out in succ.items():
        for _, t in out:
            preds[t].append(s)
    live_out = {s: len(out) for s, out in succ.items()}
    dead = set()
    stack = [s for s, k in live_out.items() if k == 0]
    while stack:
        s = stack.pop()
        if s in dead:
            continue
        dead.add(s)
        for p in preds[s]:
            live_out[p] -= 1
            if live_out[p] == 0 and p not in dead:
                stack.append(p)
    explored = len(succ)
    if start in dead:
        return None, explored
    # walk surviving states until one repeats; the loop is the witness
    seen = {start: 0}
    cuts: list[int] = []
    s = start
    while True:
        i, s = next((i, t) for i, t in succ[s] if t not in dead)
        cuts.append(i)
        if s in seen:
            return tuple(cuts[seen[s]:]), explored
        seen[s] = len(cuts)


def feasible(
    inst: BGTInstance,
    H,
    max_bamboos: int = DEFAULT_MAX_BAMBOOS,
    node_limit: int = DEFAULT_NODE_LIMIT,
) -> bool:
    """Whether some perpetual schedule keeps every height at most ``H``."""
    return find_witness(inst, H, max_bamboos, node_limit) is not None


def find_witness(
    inst: BGTInstance,
    H,
    max_bamboos: int = DEFAULT_MAX_BAMBOOS,
    node_limit: int = DEFAULT_NODE_LIMIT,
) -> Optional[tuple[int, ...]]:
    """A cut cycle (bamboo ids, repeated forever) of elevation <= ``H``, or None."""
    witness, _ = _search(inst, Fraction(H), max_bamboos, node_limit)
    return witness


def exact_optimum(
    inst: BGTInstance,
    max_bamboos: int = DEFAULT_MAX_BAMBOOS,
    node_limit: int = DEFAULT_NODE_LIMIT,
) -> OracleResult:
    """Minimum elevation over all schedules, with an optimal cut cycle."""
    if inst.n > max_bamboos:
        raise OracleLimitError(f"{inst.n} bamboos exceeds the oracle cap of {max_bamboos}")
    if inst.n == 1:
        return OracleResult(inst.h1, (0,), 1)
    _, upper = run_pw2(inst)
    lb = lower_bound(inst)
    cands = sorted(
        {d * g for g in set(inst.growths) for d in range(1, int(upper // g) + 1) if d * g >= lb}
    )
    assert cands, "no candidate between the lower bound and the pinwheel value"
    lo, hi = 0, len(cands) - 1
    best = None
    total = 0
    witness, k = _search(inst, cands[hi], max_bamboos, node_limit)
    total += k
    if witness is None:
        raise AssertionError(f"pinwheel value {upper} is not feasible for the oracle")
    best = (cands[hi], witness)
    hi -= 1
    while lo <= hi:
        mid = (lo + hi) // 2
        w, k = _search(inst, cands[mid], max_bamboos, node_limit)
        total += k
        if w is not None:
            best = (cands[mid], w)
            hi = mid - 1
        else:
            lo = mid + 1
    return OracleResult(best[0], best[1], total)
