"""Pairwise, k-wise and global consistency; the acyclic chase; counterexamples on cyclic schemas."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Any, Sequence

from ._search import DEFAULT_BUDGET, BudgetExceeded, SearchStats, searchable, solve_sums
from .hypergraph import AcyclicityCertificate, Hypergraph, check_acyclic
from .joins import BlockInfeasible, NotInnerConsistent, block_join, join, witnessing_join_method
from .monoids import CapabilityError, Monoid
from .relations import KRelation, RelationError, inner_consistent, merged_domains, verify_witness
from .transport import (TransportInstance, TransportSolution, Undecidable, is_balanced, solve,
                        solver_name)

CONSISTENT = "consistent"
INCONSISTENT = "inconsistent"
UNDECIDABLE = "undecidable-here"
BUDGET = "budget-exceeded"


class ConsistencyError(ValueError):
    pass


@dataclass
class ConsistencyVerdict:
    level: str
    outcome: str
    witnesses: dict = field(default_factory=dict)
    failing: tuple | None = None
    reason: str | None = None
    block: dict | None = None
    method: str | None = None
    detail: dict = field(default_factory=dict)

    @property
    def consistent(self) -> bool:
        return self.outcome == CONSISTENT

    @property
    def decided(self) -> bool:
        return self.outcome in (CONSISTENT, INCONSISTENT)


def schema_of(relations: Sequence[KRelation]) -> Hypergraph:
    return Hypergraph.from_edges([R.attrs for R in relations]) if relations else Hypergraph([], [])


def _same_monoid(relations: Sequence[KRelation]) -> Monoid:
    if not relations:
        raise ConsistencyError("need at least one relation")
    m = relations[0].monoid
    for R in relations[1:]:
        if R.monoid != m:
            raise RelationError(f"monoid mismatch: {m.name} vs {R.monoid.name}")
    return m


# ---------------------------------------------------------------------------
# pairs


def check_pair(R: KRelation, S: KRelation, budget: int = DEFAULT_BUDGET,
               indices: tuple = (0, 1)) -> ConsistencyVerdict:
    """Inner consistency, then one transportation instance per common tuple."""
    m = _same_monoid([R, S])
    ok, _, _ = inner_consistent(R, S)
    method = solver_name(m)
    if not ok:
        return ConsistencyVerdict("pairwise", INCONSISTENT, failing=indices,
                                  reason="inner-inconsistency", method=method)
    if method is None:
        return ConsistencyVerdict("pairwise", UNDECIDABLE, failing=indices, method=None,
                                  reason=f"no transportation solver over {m.name}")
    try:
        W = block_join(R, S, lambda inst: solve(inst, budget=budget)[0])
    except BlockInfeasible as exc:
        return ConsistencyVerdict("pairwise", INCONSISTENT, failing=indices,
                                  reason="transport-infeasible", block=exc.block, method=method)
    except BudgetExceeded:
        return ConsistencyVerdict("pairwise", BUDGET, failing=indices, method=method)
    if not verify_witness(W, [R, S]):  # pragma: no cover - guaranteed by construction
        raise ConsistencyError("assembled pair witness does not verify")
    return ConsistencyVerdict("pairwise", CONSISTENT, witnesses={indices: W}, method=method)


# ---------------------------------------------------------------------------
# brute-force global witnesses


def candidate_support(relations: Sequence[KRelation]) -> tuple[list[str], list[tuple]]:
    """Tuples over all attributes whose projections all lie in the supports."""
    attrs: list[str] = []
    rows: list[dict] = [{}]
    for R in relations:
        new = [a for a in R.attrs if a not in attrs]
        shared = [a for a in R.attrs if a in attrs]
        attrs += new
        nxt = []
        index: dict[tuple, list[tuple]] = {}
        for t in R.tuples():
            index.setdefault(R.project_tuple(t, shared), []).append(t)
        for row in rows:
            for t in index.get(tuple(row[a] for a in shared), ()):
                r2 = dict(row)
                r2.update(zip(R.attrs, t))
                nxt.append(r2)
        rows = nxt
    attrs = sorted(attrs)
    domains = merged_domains(relations)
    pos = {a: {v: i for i, v in enumerate(domains[a])} for a in attrs}
    tuples = sorted((tuple(r[a] for a in attrs) for r in rows),
                    key=lambda t: tuple(pos[a][v] for a, v in zip(attrs, t)))
    return attrs, tuples


def search_global_witness(relations: Sequence[KRelation], budget: int = DEFAULT_BUDGET,
                          stats: SearchStats | None = None) -> KRelation | None:
    """Exhaustive witness search over the candidate support; ``None`` if none exists."""
    m = _same_monoid(relations)
    if not searchable(m):
        raise CapabilityError(f"exhaustive witness search is not available over {m.name}")
    attrs, cells = candidate_support(relations)
    groups, targets = [], []
    for R in relations:
        pos = [attrs.index(a) for a in R.attrs]
        by_proj: dict[tuple, list[int]] = {}
        for x, t in enumerate(cells):
            by_proj.setdefault(tuple(t[p] for p in pos), []).append(x)
        for s, v in R.items():
            groups.append(by_proj.get(s, []))
            targets.append(v)
    if stats is None:
        stats = SearchStats()
    sol = solve_sums(m, len(cells), groups, targets, budget=budget, stats=stats)
    if sol is None:
        return None
    W = KRelation(m, attrs, dict(zip(cells, sol)), domains=merged_domains(relations))
    if not verify_witness(W, relations):  # pragma: no cover
        raise ConsistencyError("search produced a non-witness")
    return W


# ---------------------------------------------------------------------------
# chase


def chase_acyclic(relations: Sequence[KRelation], cert: AcyclicityCertificate | None = None,
                  budget: int = DEFAULT_BUDGET) -> KRelation:
    """Join the relations along a running-intersection listing.

    ``T_1 = R_1`` and ``T_i`` is the witnessing join of ``T_{i-1}`` with ``R_i``.
    The result is checked against every input before it is returned.
    """
    m = _same_monoid(relations)
    if len(relations) == 1:
        return relations[0]
    if cert is None:
        cert = check_acyclic(schema_of(relations))
    if not cert.acyclic:
        raise ConsistencyError("the chase needs an acyclic schema")
    if len(cert.order) != len(relations):
        raise ConsistencyError("certificate does not match the relations")
    method = witnessing_join_method(m)
    if method is None:
        raise CapabilityError(f"no witnessing join is available over {m.name}")
    T = relations[cert.order[0]]
    for i in cert.order[1:]:
        try:
            T = join(T, relations[i], method, budget=budget)
        except NotInnerConsistent as exc:
            raise ConsistencyError(
                f"relation {i} disagrees with the partial join; input is not pairwise consistent"
            ) from exc
    if not verify_witness(T, relations):  # pragma: no cover - guaranteed by the chase
        raise ConsistencyError("chase result does not witness the input")
    return T


# ---------------------------------------------------------------------------
# subsets


def _decide_subset(rels: Sequence[KRelation], budget: int) -> tuple[str, KRelation | None, str, dict]:
    """Decide consistency of a subcollection whose proper subsets are consistent."""
    m = rels[0].monoid
    cert = check_acyclic(schema_of(rels))
    if cert.acyclic and witnessing_join_method(m) is not None:
        return CONSISTENT, chase_acyclic(rels, cert, budget=budget), "chase", {}
    if searchable(m):
        stats = SearchStats()
        try:
            W = search_global_witness(rels, budget=budget, stats=stats)
        except BudgetExceeded:
            return BUDGET, None, "search", {"nodes": stats.nodes, "candidates": stats.cells}
        info = {"nodes": stats.nodes, "candidates": stats.cells}
        return (CONSISTENT if W is not None else INCONSISTENT), W, "search", info
    return UNDECIDABLE, None, "none", {}


def check_kwise(relations: Sequence[KRelation], k: int, budget: int = DEFAULT_BUDGET,
                level: str | None = None) -> ConsistencyVerdict:
    """Check every subcollection of size at most ``k``, smallest first."""
    _same_monoid(relations)
    n = len(relations)
    if not 1 <= k <= n:
        raise ConsistencyError(f"k must lie between 1 and {n}")
    level = level or ("pairwise" if k == 2 else "global" if k == n else f"{k}-wise")
    witnesses: dict[tuple, KRelation] = {(i,): R for i, R in enumerate(relations)}
    methods: dict[str, int] = {}
    detail: dict[str, Any] = {"subsets": {}}
    if k >= 2:
        for i, j in itertools.combinations(range(n), 2):
            v = check_pair(relations[i], relations[j], budget=budget, indices=(i, j))
            methods[v.method or "none"] = methods.get(v.method or "none", 0) + 1
            if not v.consistent:
                v.level = level
                v.witnesses = witnesses
                return v
            witnesses.update(v.witnesses)
    for q in range(3, k + 1):
        for idx in itertools.combinations(range(n), q):
            rels = [relations[i] for i in idx]
            outcome, W, how, info = _decide_subset(rels, budget)
            methods[how] = methods.get(how, 0) + 1
            if info:
                detail["subsets"][",".join(map(str, idx))] = info
            if outcome != CONSISTENT:
                reason = "exhaustive-exhausted" if outcome == INCONSISTENT else None
                return ConsistencyVerdict(level, outcome, witnesses=witnesses, failing=idx,
                                          reason=reason, method=how, detail=detail)
            witnesses[idx] = W
    method = ",".join(sorted(methods)) if methods else "trivial"
    return ConsistencyVerdict(level, CONSISTENT, witnesses=witnesses, method=method,
                              detail=detail)


def check_pairwise(relations: Sequence[KRelation], budget: int = DEFAULT_BUDGET) -> ConsistencyVerdict:
    return check_kwise(relations, min(2, len(relations)), budget=budget, level="pairwise")


def check_global(relations: Sequence[KRelation], budget: int = DEFAULT_BUDGET) -> ConsistencyVerdict:
    return check_kwise(relations, len(relations), budget=budget, level="global")


def global_witness(verdict: ConsistencyVerdict, n: int) -> KRelation | None:
    return verdict.witnesses.get(tuple(range(n))) if verdict.consistent else None


# ---------------------------------------------------------------------------
# transportation through global consistency on a path


def p3_relations(inst: TransportInstance) -> list[KRelation]:
    """The three relations over ``AB``, ``BC``, ``CD`` encoding an instance."""
    m = inst.monoid
    a = m.sum(inst.b)
    us = [f"u{i + 1}" for i in range(len(inst.b))]
    vs = [f"v{j + 1}" for j in range(len(inst.c))]
    dom = {"A": us + vs, "B": [0, 1], "C": [0, 1], "D": us + vs}
    R = KRelation(m, "AB", {**{(u, 0): b for u, b in zip(us, inst.b)},
                            **{(v, 1): c for v, c in zip(vs, inst.c)}}, domains=dom, name="R")
    S = KRelation(m, "BC", {(0, 0): a, (1, 1): a}, domains=dom, name="S")
    T = KRelation(m, "CD", {**{(1, u): b for u, b in zip(us, inst.b)},
                            **{(0, v): c for v, c in zip(vs, inst.c)}}, domains=dom, name="T")
    return [R, S, T]


def transport_via_p3(inst: TransportInstance, budget: int = DEFAULT_BUDGET) -> TransportSolution | None:
    """Solve an instance by deciding global consistency of its path encoding."""
    m = inst.monoid
    rows, cols = inst.shape
    if not is_balanced(inst):
        return None
    if m.is_zero(m.sum(inst.b)):
        d = tuple(tuple(m.zero for _ in range(cols)) for _ in range(rows))
        return TransportSolution(inst, d, "p3")
    rels = p3_relations(inst)
    verdict = check_global(rels, budget=budget)
    if verdict.outcome == BUDGET:
        raise BudgetExceeded(budget)
    if verdict.outcome == UNDECIDABLE:
        raise Undecidable(f"global consistency over {m.name} is not decidable here")
    if not verdict.consistent:
        return None
    Y = global_witness(verdict, 3)
    d = tuple(tuple(Y[{"A": f"u{i + 1}", "B": 0, "C": 0, "D": f"v{j + 1}"}]
                    for j in range(cols)) for i in range(rows))
    sol = TransportSolution(inst, d, "p3")
    if not sol.verify():  # pragma: no cover
        raise ConsistencyError("extracted matrix does not solve the instance")
    return sol


# ---------------------------------------------------------------------------
# counterexamples on cyclic schemas


@dataclass
class Counterexample:
    schema: Hypergraph
    relations: list
    certificate: AcyclicityCertificate
    a: Any
    k: int
    d: int
    core_relations: list

    def parity_certificate(self) -> dict:
        return parity_certificate(self.certificate.core, self.d, self.k)


def parity_certificate(core: Hypergraph, d: int, k: int) -> dict:
    """Why no tuple satisfies every congruence on a k-uniform d-regular core.

    Summing the edge sums counts every vertex value ``d`` times, so the total is
    ``0 (mod d)``. The required residues add up to ``1 (mod d)``.
    """
    residues = [0] * (len(core.edges) - 1) + [1]
    uniform = core.is_uniform(k)
    regular = core.is_regular(d)
    holds = uniform and regular and d >= 2 and sum(residues) % d == 1
    return {"k": k, "d": d, "uniform": uniform, "regular": regular, "residues": residues,
            "sum_of_residues_mod_d": sum(residues) % d, "holds": holds}


def tseitin_relations(core: Hypergraph, m: Monoid, a, d: int) -> list[KRelation]:
    """Edge relations with value ``a`` on tuples whose sum is 0 mod d (1 on the last edge)."""
    dom = {v: list(range(d)) for v in core.vertices}
    out = []
    for i, e in enumerate(core.edges):
        attrs = sorted(e)
        want = 1 % d if i == len(core.edges) - 1 else 0
        data = {t: a for t in itertools.product(range(d), repeat=len(attrs))
                if sum(t) % d == want}
        out.append(KRelation(m, attrs, data, domains={v: dom[v] for v in attrs}))
    return out


def lift_through_deletions(H: Hypergraph, cert: AcyclicityCertificate,
                           core_relations: Sequence[KRelation], values: Sequence) -> list[KRelation]:
    """Undo the safe deletions that lead from ``H`` to the core.

    A covered edge gets the marginal of its covering relation. A deleted vertex is
    pinned to the first value of its domain; an edge consisting of that vertex
    alone gets the common total on that value.
    """
    from .hypergraph import apply_step

    states = [H]
    for st in cert.deletions:
        states.append(apply_step(states[-1], st))
    rels = list(core_relations)
    m = rels[0].monoid
    total = rels[0].total()
    u0 = values[0]
    for st, before in zip(reversed(cert.deletions), reversed(states[:-1])):
        if st.kind == "covered-edge":
            j = st.cover if st.cover < st.index else st.cover - 1
            cover = rels[j]
            R = cover.marginal(sorted(st.edge))
            rels.insert(st.index, R)
        else:
            A = st.vertex
            new, it = [], iter(rels)
            for idx, e in enumerate(before.edges):
                if idx in st.dropped:
                    new.append(KRelation(m, [A], {(u0,): total}, domains={A: list(values)}))
                    continue
                S = next(it)
                if A not in e:
                    new.append(S)
                    continue
                doms = dict(S.domains)
                doms[A] = list(values)
                data = {t + (u0,): v for t, v in S.items()}
                new.append(KRelation(m, list(S.attrs) + [A], data, domains=doms))
            rels = new
    return rels


def generate_counterexample(H: Hypergraph, m: Monoid, c) -> Counterexample:
    """Relations over a cyclic ``H`` that are pairwise but not globally consistent."""
    m.check(c)
    if m.is_zero(c):
        raise ConsistencyError("the seed element must be nonzero")
    cert = check_acyclic(H)
    if cert.acyclic:
        raise ConsistencyError("acyclic schemas have the local-to-global property")
    core = cert.core
    k = len(core.edges[0])
    d = core.degree(core.vertices[0])
    a = m.times(d ** k, c)
    core_rels = tseitin_relations(core, m, a, d)
    rels = lift_through_deletions(H, cert, core_rels, list(range(d)))
    rels = [R.renamed(f"R{i + 1}") for i, R in enumerate(rels)]
    for R, e in zip(rels, H.edges):
        assert set(R.attrs) == set(e)
    return Counterexample(H, rels, cert, a, k, d, core_rels)


__all__ = [
    "ConsistencyVerdict", "ConsistencyError", "Counterexample", "CONSISTENT", "INCONSISTENT",
    "UNDECIDABLE", "BUDGET", "check_pair", "check_kwise", "check_pairwise", "check_global",
    "chase_acyclic", "candidate_support", "search_global_witness", "transport_via_p3",
    "p3_relations", "generate_counterexample", "tseitin_relations", "parity_certificate",
    "lift_through_deletions", "schema_of", "global_witness",
]
