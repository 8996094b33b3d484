"""Backtracking over unknowns constrained by sums.

Every constraint says "the cells in this group add up to this target". The
engine assigns cells in the given order, tries candidate values in the given
order, and prunes a constraint as soon as its partial sum can no longer be
extended to the target by the cells still open in it.
"""

from __future__ import annotations

import sys
from dataclasses import dataclass, field
from typing import Sequence

from .monoids import Monoid, sums_of

DEFAULT_BUDGET = 10**7


class BudgetExceeded(RuntimeError):
    def __init__(self, nodes: int):
        super().__init__(f"search budget of {nodes} nodes exceeded")
        self.nodes = nodes


@dataclass
class SearchStats:
    nodes: int = 0
    cells: int = 0
    candidates: list = field(default_factory=list)


def searchable(m: Monoid) -> bool:
    """Whether the engine is complete for this monoid."""
    return m.caps.finite or (m.caps.bounded and m.caps.preorder)


def _candidate_values(m: Monoid, targets: Sequence) -> list:
    # any summand of a sum is below the sum, so a cell is below all its targets
    if not targets:
        return [m.zero]
    vals = m.below(targets[0])
    for t in targets[1:]:
        ok = set(m.below(t))
        vals = [v for v in vals if v in ok]
    if m.caps.finite:
        order = {v: i for i, v in enumerate(m.enumerate())}
        vals.sort(key=lambda v: order[v])
    else:
        vals.sort(key=m.sort_key)
        if m.zero in vals:
            vals.remove(m.zero)
            vals.insert(0, m.zero)
    return vals


def solve_sums(m: Monoid, ncells: int, groups: Sequence[Sequence[int]], targets: Sequence,
               budget: int = DEFAULT_BUDGET, stats: SearchStats | None = None,
               candidates: Sequence[Sequence] | None = None) -> list | None:
    """First assignment (in cell/candidate order) meeting every group target, else ``None``.

    Raises :class:`BudgetExceeded` after ``budget`` assignments without a verdict.
    """
    if not searchable(m):
        raise ValueError(f"exhaustive search is not available over {m.name}")
    stats = stats if stats is not None else SearchStats()
    stats.cells = ncells
    member: list[list[int]] = [[] for _ in range(ncells)]
    for g, cells in enumerate(groups):
        for x in cells:
            member[x].append(g)
    if candidates is None:
        candidates = [_candidate_values(m, [targets[g] for g in member[x]]) for x in range(ncells)]
    stats.candidates = [len(c) for c in candidates]
    for g, cells in enumerate(groups):
        if not cells and not m.is_zero(targets[g]):
            return None

    partial = [m.zero] * len(groups)
    remaining = [len(cells) for cells in groups]

    if m.caps.finite:
        elems = m.enumerate()
        # stabilised sums: with zero available, sums of r elements grow with r
        sums = sums_of(m, min(max(remaining, default=0), len(elems) + 1))
        cache: dict = {}

        def reachable(s, r, t):
            r = min(r, len(sums) - 1)
            key = (s, r)
            got = cache.get(key)
            if got is None:
                got = cache[key] = {m.add(s, y) for y in sums[r]}
            return t in got
    else:

        def reachable(s, r, t):
            if r == 0:
                return s == t
            return m.try_subtract(s, t) is not None

    solution = [m.zero] * ncells
    limit = sys.getrecursionlimit()
    if ncells + 100 > limit:
        sys.setrecursionlimit(ncells + 200)

    def place(x: int) -> bool:
        if x == ncells:
            return True
        for v in candidates[x]:
            stats.nodes += 1
            if stats.nodes > budget:
                raise BudgetExceeded(budget)
            ok = True
            touched = []
            for g in member[x]:
                old = partial[g]
                partial[g] = m.add(old, v)
                remaining[g] -= 1
                touched.append((g, old))
                if not reachable(partial[g], remaining[g], targets[g]):
                    ok = False
                    break
            if ok:
                solution[x] = v
                if place(x + 1):
                    return True
            for g, old in touched:
                partial[g] = old
                remaining[g] += 1
        return False

    try:
        found = place(0)
    finally:
        sys.setrecursionlimit(limit)
    return list(solution) if found else None
