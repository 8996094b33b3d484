"""Witness-producing joins of two K-relations."""

from __future__ import annotations

import enum
from typing import Callable

from ._search import DEFAULT_BUDGET, searchable
from .monoids import CapabilityError, Monoid, Power
from .relations import KRelation, RelationError, inner_consistent, merged_domains, verify_witness
from .transport import TransportInstance, TransportSolution, Undecidable, solve_exhaustive, solve_northwest


class JoinMethod(str, enum.Enum):
    STANDARD = "standard"
    VOROBEV = "vorobev"
    NORTHWEST = "northwest"
    COMPONENTWISE = "componentwise"
    EXHAUSTIVE = "exhaustive"


class JoinError(ValueError):
    pass


class NotInnerConsistent(JoinError):
    pass


class BlockInfeasible(JoinError):
    """A block of the join has no transportation solution."""

    def __init__(self, block: dict, instance: TransportInstance):
        super().__init__(f"block {block} has no transportation solution")
        self.block = block
        self.instance = instance


def _layout(R: KRelation, S: KRelation):
    X, Y = R.attr_set(), S.attr_set()
    Z = sorted(X & Y)
    out = sorted(X | Y)
    return Z, out


def _combine(R: KRelation, S: KRelation, out: list[str], r: tuple, s: tuple) -> tuple:
    vals = dict(zip(R.attrs, r))
    vals.update(zip(S.attrs, s))
    return tuple(vals[a] for a in out)


def _groups(R: KRelation, Z: list[str]) -> dict[tuple, list[tuple]]:
    g: dict[tuple, list[tuple]] = {}
    for t in R.tuples():
        g.setdefault(R.project_tuple(t, Z), []).append(t)
    return g


def _check_monoids(R: KRelation, S: KRelation) -> Monoid:
    if R.monoid != S.monoid:
        raise RelationError(f"monoid mismatch: {R.monoid.name} vs {S.monoid.name}")
    return R.monoid


def standard_join(R: KRelation, S: KRelation) -> KRelation:
    """``W(t) = R(t[X]) × S(t[Y])``."""
    m = _check_monoids(R, S)
    if not m.caps.semiring:
        raise CapabilityError(f"{m.name} has no multiplication")
    Z, out = _layout(R, S)
    sg = _groups(S, Z)
    data = {}
    for r in R.tuples():
        for s in sg.get(R.project_tuple(r, Z), ()):
            data[_combine(R, S, out, r, s)] = m.mul(R[r], S[s])
    return KRelation(m, out, data, domains=merged_domains([R, S]))


def vorobev_join(R: KRelation, S: KRelation) -> KRelation:
    """``W(t) = R(t[X]) × S(t[Y]) / R(t[X ∩ Y])`` over a semifield."""
    m = _check_monoids(R, S)
    if not m.caps.semifield:
        raise CapabilityError(f"{m.name} is not declared a semifield")
    ok, RZ, _ = inner_consistent(R, S)
    if not ok:
        raise NotInnerConsistent("the two relations disagree on their common attributes")
    Z, out = _layout(R, S)
    sg = _groups(S, Z)
    data = {}
    for r in R.tuples():
        z = R.project_tuple(r, Z)
        denom = RZ[z]
        if m.is_zero(denom):
            continue
        for s in sg.get(z, ()):
            data[_combine(R, S, out, r, s)] = m.div(m.mul(R[r], S[s]), denom)
    return KRelation(m, out, data, domains=merged_domains([R, S]))


Solver = Callable[[TransportInstance], "TransportSolution | None"]


def block_join(R: KRelation, S: KRelation, solver: Solver) -> KRelation:
    """Assemble a witness block by block.

    For every tuple ``z`` in the common marginal's support, the extensions of
    ``z`` in ``R`` give the row sums and those in ``S`` give the column sums of a
    transportation instance; its solution fills the ``z`` block of the witness.
    """
    m = _check_monoids(R, S)
    ok, RZ, _ = inner_consistent(R, S)
    if not ok:
        raise NotInnerConsistent("the two relations disagree on their common attributes")
    Z, out = _layout(R, S)
    rg, sg = _groups(R, Z), _groups(S, Z)
    data = {}
    for z in RZ.tuples():
        rows, cols = rg[z], sg[z]
        inst = TransportInstance(m, [R[r] for r in rows], [S[s] for s in cols])
        sol = solver(inst)
        if sol is None:
            raise BlockInfeasible(dict(zip(Z, z)), inst)
        for i, r in enumerate(rows):
            for j, s in enumerate(cols):
                v = sol.d[i][j]
                if not m.is_zero(v):
                    data[_combine(R, S, out, r, s)] = v
    return KRelation(m, out, data, domains=merged_domains([R, S]))


def northwest_join(R: KRelation, S: KRelation) -> KRelation:
    m = _check_monoids(R, S)
    if not m.caps.northwest:
        raise CapabilityError(f"{m.name} is not weakly cancellative and totally preordered")
    return block_join(R, S, solve_northwest)


def exhaustive_join(R: KRelation, S: KRelation, budget: int = DEFAULT_BUDGET) -> KRelation:
    """Block join with brute-force block solving; raises :class:`BlockInfeasible`."""
    m = _check_monoids(R, S)
    if not searchable(m):
        raise CapabilityError(f"exhaustive join needs a finite monoid, not {m.name}")
    return block_join(R, S, lambda inst: solve_exhaustive(inst, budget=budget))


def _fresh(name: str, taken) -> str:
    while name in taken:
        name = "_" + name
    return name


def base_join_method(m: Monoid) -> JoinMethod | None:
    """Join used for a base monoid inside the component-wise join."""
    c = m.caps
    if c.northwest:
        return JoinMethod.NORTHWEST
    if c.lattice:
        return JoinMethod.STANDARD
    if c.semifield:
        return JoinMethod.VOROBEV
    if isinstance(m, Power) and base_join_method(m.base) is not None:
        return JoinMethod.COMPONENTWISE
    if searchable(m):
        return JoinMethod.EXHAUSTIVE
    return None


def componentwise_join(R: KRelation, S: KRelation, budget: int = DEFAULT_BUDGET) -> KRelation:
    """Join over a finite-support power through the index-attribute encoding.

    Each relation is re-encoded over the base monoid with one extra attribute
    holding the index key, ``R0(r, i) = R(r)(i)``. The encoded relations are
    joined with the base monoid's join and the result is decoded back.
    """
    m = _check_monoids(R, S)
    if not isinstance(m, Power):
        raise CapabilityError(f"{m.name} is not a finite-support power")
    base = m.base
    method = base_join_method(base)
    if method is None:
        raise CapabilityError(f"no join is available over the base monoid {base.name}")
    ok, _, _ = inner_consistent(R, S)
    if not ok:
        raise NotInnerConsistent("the two relations disagree on their common attributes")
    idx = _fresh("_index", set(R.attrs) | set(S.attrs))

    def encode(T: KRelation) -> KRelation:
        data = {}
        for t, v in T.items():
            for k, x in v.items():
                data[t + (k,)] = x
        return KRelation(base, T.attrs + (idx,), data, validate=False)

    W0 = join(encode(R), encode(S), method, budget=budget)
    pos = W0.attrs.index(idx)
    out_attrs = [a for a in W0.attrs if a != idx]
    parts: dict[tuple, dict] = {}
    for t, x in W0.items():
        key = t[:pos] + t[pos + 1:]
        parts.setdefault(key, {})[t[pos]] = x
    data = {t: m.make(p) for t, p in parts.items()}
    return KRelation(m, out_attrs, data, domains=merged_domains([R, S]))


def join(R: KRelation, S: KRelation, method: JoinMethod | str,
         budget: int = DEFAULT_BUDGET) -> KRelation:
    method = JoinMethod(method)
    if method is JoinMethod.STANDARD:
        return standard_join(R, S)
    if method is JoinMethod.VOROBEV:
        return vorobev_join(R, S)
    if method is JoinMethod.NORTHWEST:
        return northwest_join(R, S)
    if method is JoinMethod.COMPONENTWISE:
        return componentwise_join(R, S, budget=budget)
    return exhaustive_join(R, S, budget=budget)


def witnessing_join_method(m: Monoid) -> JoinMethod | None:
    """A join guaranteed to witness every inner-consistent pair over ``m``.

    Brute force is deliberately excluded: over a finite monoid without the
    transportation property a block can be infeasible.
    """
    c = m.caps
    if c.lattice:
        return JoinMethod.STANDARD
    if c.northwest:
        return JoinMethod.NORTHWEST
    if isinstance(m, Power) and witnessing_join_method(m.base) is not None:
        return JoinMethod.COMPONENTWISE
    if c.semifield:
        return JoinMethod.VOROBEV
    return None


def witnessing_join(R: KRelation, S: KRelation, budget: int = DEFAULT_BUDGET) -> tuple[KRelation, JoinMethod]:
    """Join with the best applicable method, falling back to brute force on finite monoids."""
    m = _check_monoids(R, S)
    method = witnessing_join_method(m)
    if method is None:
        if not searchable(m):
            raise Undecidable(f"no witnessing join is available over {m.name}")
        method = JoinMethod.EXHAUSTIVE
    return join(R, S, method, budget=budget), method


def sparsity(W: KRelation, R: KRelation, S: KRelation) -> tuple[int, int]:
    """``(|W'|, |R'| + |S'|)``."""
    return len(W), len(R) + len(S)


__all__ = [
    "JoinMethod", "JoinError", "NotInnerConsistent", "BlockInfeasible", "standard_join",
    "vorobev_join", "northwest_join", "componentwise_join", "exhaustive_join", "block_join",
    "join", "witnessing_join", "witnessing_join_method", "base_join_method", "sparsity",
    "verify_witness",
]
