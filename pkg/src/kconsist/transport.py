"""Balanced transportation instances over a monoid and their solvers."""

from __future__ import annotations

from dataclasses import dataclass
from ._search import DEFAULT_BUDGET, BudgetExceeded, SearchStats, searchable, solve_sums
from .monoids import CapabilityError, Monoid, Power, transport_method


class TransportError(ValueError):
    pass


class Unbalanced(TransportError):
    pass


class Undecidable(RuntimeError):
    """No solver in this package applies to the monoid."""


@dataclass(frozen=True)
class TransportInstance:
    monoid: Monoid
    b: tuple
    c: tuple

    def __post_init__(self):
        object.__setattr__(self, "b", tuple(self.b))
        object.__setattr__(self, "c", tuple(self.c))
        if not self.b or not self.c:
            raise TransportError("a transportation instance needs m >= 1 and n >= 1")
        for v in self.b + self.c:
            self.monoid.check(v)

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.b), len(self.c)

    def totals(self):
        return self.monoid.sum(self.b), self.monoid.sum(self.c)


@dataclass(frozen=True)
class TransportSolution:
    instance: TransportInstance
    d: tuple
    method: str = ""

    def verify(self) -> bool:
        return verify_matrix(self.instance, self.d)

    def as_lists(self) -> list[list]:
        return [list(row) for row in self.d]


def verify_matrix(inst: TransportInstance, d) -> bool:
    m = inst.monoid
    rows, cols = inst.shape
    if len(d) != rows or any(len(r) != cols for r in d):
        return False
    if any(not m.contains(x) for r in d for x in r):
        return False
    if any(m.sum(d[i]) != inst.b[i] for i in range(rows)):
        return False
    return all(m.sum(d[i][j] for i in range(rows)) == inst.c[j] for j in range(cols))


def is_balanced(inst: TransportInstance) -> bool:
    bt, ct = inst.totals()
    return bt == ct


def _freeze(d) -> tuple:
    return tuple(tuple(r) for r in d)


def _zero_matrix(inst):
    rows, cols = inst.shape
    return [[inst.monoid.zero] * cols for _ in range(rows)]


def _require_balanced(inst):
    if not is_balanced(inst):
        raise Unbalanced("row and column totals differ")


def solve_northwest(inst: TransportInstance) -> TransportSolution:
    """Northwest corner recursion for weakly cancellative, totally preordered monoids.

    Zero rows and columns are removed first. Then, while both sides have more
    than one entry, compare the current corner values ``b1`` and ``c1``: equal
    values close the row and the column; ``b1 ⊑ c1`` closes the row and leaves
    the difference in ``c1``; otherwise the column closes symmetrically.
    """
    m = inst.monoid
    if not m.caps.northwest:
        raise CapabilityError(f"{m.name} is not declared weakly cancellative and totally preordered")
    _require_balanced(inst)
    d = _zero_matrix(inst)
    rows = [i for i, v in enumerate(inst.b) if not m.is_zero(v)]
    cols = [j for j, v in enumerate(inst.c) if not m.is_zero(v)]
    b = {i: inst.b[i] for i in rows}
    c = {j: inst.c[j] for j in cols}
    ri = ci = 0
    while ri < len(rows) and ci < len(cols):
        i, j = rows[ri], cols[ci]
        if ri == len(rows) - 1:
            for jj in cols[ci:]:
                d[i][jj] = c[jj]
            break
        if ci == len(cols) - 1:
            for ii in rows[ri:]:
                d[ii][j] = b[ii]
            break
        b1, c1 = b[i], c[j]
        if b1 == c1:
            d[i][j] = b1
            ri += 1
            ci += 1
            continue
        a = m.try_subtract(b1, c1)
        if a is not None:
            d[i][j] = b1
            c[j] = a
            ri += 1
            continue
        a = m.try_subtract(c1, b1)
        if a is None:
            raise CapabilityError(f"{m.name}: {b1!r} and {c1!r} are incomparable")
        d[i][j] = c1
        b[i] = a
        ci += 1
    sol = TransportSolution(inst, _freeze(d), "northwest")
    if not sol.verify():
        raise TransportError("northwest recursion produced an invalid matrix")
    return sol


def solve_exhaustive(inst: TransportInstance, budget: int = DEFAULT_BUDGET,
                     stats: SearchStats | None = None) -> TransportSolution | None:
    """Row-major backtracking with zero-first candidates; ``None`` when infeasible."""
    m = inst.monoid
    if not searchable(m):
        raise CapabilityError(f"exhaustive search needs a finite monoid, not {m.name}")
    rows, cols = inst.shape
    groups = [[i * cols + j for j in range(cols)] for i in range(rows)]
    groups += [[i * cols + j for i in range(rows)] for j in range(cols)]
    targets = list(inst.b) + list(inst.c)
    if m.caps.finite:
        elems = m.enumerate()
        cand = [elems] * (rows * cols)
    else:
        cand = None
    flat = solve_sums(m, rows * cols, groups, targets, budget=budget, stats=stats,
                      candidates=cand)
    if flat is None:
        return None
    d = [flat[i * cols:(i + 1) * cols] for i in range(rows)]
    return TransportSolution(inst, _freeze(d), "exhaustive")


def solve_lattice(inst: TransportInstance) -> TransportSolution:
    """``x_ij = b_i × c_j``, valid over bounded distributive lattices."""
    m = inst.monoid
    if not m.caps.lattice:
        raise CapabilityError(f"{m.name} is not declared a distributive lattice")
    _require_balanced(inst)
    d = [[m.mul(bi, cj) for cj in inst.c] for bi in inst.b]
    return TransportSolution(inst, _freeze(d), "lattice")


def solve_semifield(inst: TransportInstance) -> TransportSolution:
    """``x_ij = b_i × c_j / total``, valid over positive semifields."""
    m = inst.monoid
    if not m.caps.semifield:
        raise CapabilityError(f"{m.name} is not declared a semifield")
    _require_balanced(inst)
    total = m.sum(inst.b)
    if m.is_zero(total):
        return TransportSolution(inst, _freeze(_zero_matrix(inst)), "semifield")
    d = [[m.div(m.mul(bi, cj), total) for cj in inst.c] for bi in inst.b]
    return TransportSolution(inst, _freeze(d), "semifield")


def solve_componentwise(inst: TransportInstance, budget: int = DEFAULT_BUDGET) -> TransportSolution:
    """Solve a power-monoid instance one index key at a time."""
    m = inst.monoid
    if not isinstance(m, Power):
        raise CapabilityError(f"{m.name} is not a finite-support power")
    _require_balanced(inst)
    base = m.base
    keys = sorted({k for v in inst.b + inst.c for k in v})
    rows, cols = inst.shape
    parts = [[{} for _ in range(cols)] for _ in range(rows)]
    for k in keys:
        sub = TransportInstance(base, [v.get(k, base.zero) for v in inst.b],
                                [v.get(k, base.zero) for v in inst.c])
        sol, _ = solve(sub, budget=budget)
        if sol is None:
            raise TransportError(f"component {k!r} is infeasible over {base.name}")
        for i in range(rows):
            for j in range(cols):
                parts[i][j][k] = sol.d[i][j]
    d = [[m.make(parts[i][j]) for j in range(cols)] for i in range(rows)]
    sol = TransportSolution(inst, _freeze(d), "componentwise")
    if not sol.verify():
        raise TransportError("componentwise assembly produced an invalid matrix")
    return sol


def solver_name(m: Monoid) -> str | None:
    """Solver the dispatcher would pick; ``None`` if no solver applies."""
    name = transport_method(m)
    if name is not None:
        return name
    if searchable(m):
        return "exhaustive"
    return None


def solve(inst: TransportInstance, budget: int = DEFAULT_BUDGET,
          stats: SearchStats | None = None) -> tuple[TransportSolution | None, str]:
    """Solve with the best solver the monoid's capabilities justify.

    Returns ``(solution or None, method)``. Unbalanced instances are infeasible.
    Raises :class:`Undecidable` when nothing applies and :class:`BudgetExceeded`
    when a search runs out of nodes.
    """
    method = solver_name(inst.monoid)
    if method is None:
        raise Undecidable(f"no transportation solver applies to {inst.monoid.name}")
    if not is_balanced(inst):
        return None, method
    if method == "lattice":
        return solve_lattice(inst), method
    if method == "northwest":
        return solve_northwest(inst), method
    if method == "componentwise":
        return solve_componentwise(inst, budget=budget), method
    if method == "semifield":
        return solve_semifield(inst), method
    return solve_exhaustive(inst, budget=budget, stats=stats), method


__all__ = [
    "TransportInstance", "TransportSolution", "TransportError", "Unbalanced", "Undecidable",
    "BudgetExceeded", "is_balanced", "verify_matrix", "solve_northwest", "solve_exhaustive",
    "solve_lattice", "solve_semifield", "solve_componentwise", "solve", "solver_name",
]
