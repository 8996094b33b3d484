"""Hypergraphs, acyclicity certificates and minimal cyclic cores.

Acyclicity is decided by GYO reduction: repeatedly delete a vertex occurring
in at most one edge, or an edge contained in another edge. The hypergraph is
acyclic exactly when this empties it. Reversing the order in which edges
disappear gives a running-intersection listing.

When the reduction gets stuck, the cyclic core is extracted from the primal
graph. If the primal graph is not chordal, vertices are dropped while a
chordless cycle survives, leaving a cycle ``C_n``. Otherwise the hypergraph is
not conformal, and vertices are dropped while some clique stays uncovered,
leaving ``H_n``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import networkx as nx


class HypergraphError(ValueError):
    pass


@dataclass(frozen=True)
class Hypergraph:
    vertices: tuple
    edges: tuple

    def __init__(self, vertices: Iterable[str], edges: Iterable[Iterable[str]]):
        vs = tuple(dict.fromkeys(str(v) for v in vertices))
        es = tuple(frozenset(str(v) for v in e) for e in edges)
        vset = set(vs)
        for e in es:
            if not e:
                raise HypergraphError("edges must be non-empty")
            if not e <= vset:
                raise HypergraphError(f"edge {sorted(e)} mentions unknown vertices")
        object.__setattr__(self, "vertices", vs)
        object.__setattr__(self, "edges", es)

    @classmethod
    def from_edges(cls, edges: Iterable[Iterable[str]]) -> "Hypergraph":
        edges = [list(e) for e in edges]
        seen = dict.fromkeys(v for e in edges for v in e)
        return cls(seen, edges)

    def edge_set(self) -> frozenset:
        return frozenset(self.edges)

    def same_as(self, other: "Hypergraph") -> bool:
        """Equal vertex sets and equal edge sets (ignoring order and multiplicity)."""
        return set(self.vertices) == set(other.vertices) and self.edge_set() == other.edge_set()

    def degree(self, v: str) -> int:
        return sum(v in e for e in self.edges)

    def is_uniform(self, k: int) -> bool:
        return all(len(e) == k for e in self.edges)

    def is_regular(self, d: int) -> bool:
        return all(self.degree(v) == d for v in self.vertices)

    def primal_graph(self) -> nx.Graph:
        g = nx.Graph()
        g.add_nodes_from(self.vertices)
        for e in self.edges:
            g.add_edges_from(itertools.combinations(sorted(e), 2))
        return g

    def to_json(self) -> dict:
        order = {v: i for i, v in enumerate(self.vertices)}
        return {"vertices": list(self.vertices),
                "edges": [sorted(e, key=order.__getitem__) for e in self.edges]}

    def __str__(self):
        return "{" + ", ".join("".join(self.sorted_edge(e)) for e in self.edges) + "}"

    def sorted_edge(self, e) -> list[str]:
        order = {v: i for i, v in enumerate(self.vertices)}
        return sorted(e, key=order.__getitem__)


def reduce(H: Hypergraph) -> Hypergraph:
    """Keep only the maximal edges (first occurrence of repeated edges)."""
    keep = []
    for i, e in enumerate(H.edges):
        if any(e < f for f in H.edges):
            continue
        if e in H.edges[:i]:
            continue
        keep.append(e)
    return Hypergraph(H.vertices, keep)


def induced(H: Hypergraph, W: Iterable[str]) -> Hypergraph:
    """``H[W] = (W, {X ∩ W : X ∈ E} minus ∅)``."""
    W = set(W)
    if not W:
        raise HypergraphError("induced subhypergraph needs a non-empty vertex set")
    if not W <= set(H.vertices):
        raise HypergraphError("W must be a subset of the vertices")
    edges = []
    for e in H.edges:
        x = e & W
        if x and x not in edges:
            edges.append(x)
    return Hypergraph([v for v in H.vertices if v in W], edges)


def make_named(kind: str, n: int) -> Hypergraph:
    """Path ``P_n``, cycle ``C_n`` or ``H_n`` (all (n-1)-subsets) on ``A1..An``."""
    kind = kind.upper()
    minimum = {"P": 2, "C": 3, "H": 3}
    if kind not in minimum:
        raise HypergraphError(f"unknown family {kind!r}; use P, C or H")
    if isinstance(n, bool) or not isinstance(n, int) or n < minimum[kind]:
        raise HypergraphError(f"{kind}_n needs n >= {minimum[kind]}")
    V = [f"A{i}" for i in range(1, n + 1)]
    if kind == "P":
        E = [(V[i], V[i + 1]) for i in range(n - 1)]
    elif kind == "C":
        E = [(V[i], V[(i + 1) % n]) for i in range(n)]
    else:
        E = [[v for v in V if v != V[i]] for i in range(n)]
    return Hypergraph(V, E)


# ---------------------------------------------------------------------------
# safe deletions


@dataclass(frozen=True)
class SafeDeletionStep:
    """One safe deletion, indexed against the hypergraph it is applied to.

    ``kind`` is ``"vertex"`` (``vertex`` set, ``dropped`` lists edges that became
    empty) or ``"covered-edge"`` (edge ``index`` is contained in edge ``cover``).
    """

    kind: str
    vertex: str | None = None
    dropped: tuple = ()
    index: int | None = None
    cover: int | None = None
    edge: frozenset | None = None
    covering_edge: frozenset | None = None

    def to_json(self) -> dict:
        if self.kind == "vertex":
            return {"kind": "vertex", "vertex": self.vertex, "dropped_edges": list(self.dropped)}
        return {"kind": "covered-edge", "edge_index": self.index, "cover_index": self.cover,
                "edge": sorted(self.edge), "covering_edge": sorted(self.covering_edge)}


def delete_vertex(H: Hypergraph, v: str) -> tuple[Hypergraph, SafeDeletionStep]:
    if v not in H.vertices:
        raise HypergraphError(f"unknown vertex {v!r}")
    edges, dropped = [], []
    for i, e in enumerate(H.edges):
        x = e - {v}
        if x:
            edges.append(x)
        else:
            dropped.append(i)
    H2 = Hypergraph([u for u in H.vertices if u != v], edges)
    return H2, SafeDeletionStep("vertex", vertex=v, dropped=tuple(dropped))


def delete_covered_edge(H: Hypergraph, i: int, j: int) -> tuple[Hypergraph, SafeDeletionStep]:
    e, f = H.edges[i], H.edges[j]
    if i == j or not e <= f:
        raise HypergraphError(f"edge {i} is not covered by edge {j}")
    edges = [x for k, x in enumerate(H.edges) if k != i]
    return Hypergraph(H.vertices, edges), SafeDeletionStep(
        "covered-edge", index=i, cover=j, edge=e, covering_edge=f)


def apply_step(H: Hypergraph, step: SafeDeletionStep) -> Hypergraph:
    if step.kind == "vertex":
        return delete_vertex(H, step.vertex)[0]
    return delete_covered_edge(H, step.index, step.cover)[0]


def replay(H: Hypergraph, steps: Sequence[SafeDeletionStep]) -> Hypergraph:
    for s in steps:
        H = apply_step(H, s)
    return H


def _first_cover(edges: Sequence[frozenset]) -> tuple[int, int] | None:
    for i, e in enumerate(edges):
        for j, f in enumerate(edges):
            if i != j and e <= f:
                return i, j
    return None


# ---------------------------------------------------------------------------
# chordality and conformality


def uncovered_clique(H: Hypergraph) -> frozenset | None:
    """A clique of the primal graph inside no edge, via Gilmore's triple test."""
    E = list(dict.fromkeys(H.edges))
    for a, b, c in itertools.combinations(E, 3):
        u = (a & b) | (b & c) | (a & c)
        if not any(u <= e for e in E):
            g = H.primal_graph()
            clique = set(u)
            for v in H.vertices:
                if v not in clique and all(g.has_edge(v, w) for w in clique):
                    clique.add(v)
            return frozenset(clique)
    return None


def is_conformal(H: Hypergraph) -> bool:
    return uncovered_clique(H) is None


def is_chordal(H: Hypergraph) -> bool:
    return nx.is_chordal(H.primal_graph())


def _minimise(W: list[str], still_bad) -> list[str]:
    changed = True
    while changed:
        changed = False
        for v in list(W):
            rest = [u for u in W if u != v]
            if rest and still_bad(rest):
                W = rest
                changed = True
    return W


def _cycle_order(g: nx.Graph, W: Sequence[str]) -> list[str]:
    sub = g.subgraph(W)
    start = W[0]
    order, prev = [start], None
    cur = start
    while True:
        nbrs = sorted((u for u in sub.neighbors(cur) if u != prev), key=list(W).index)
        if not nbrs or nbrs[0] == start:
            break
        prev, cur = cur, nbrs[0]
        order.append(cur)
    return order


def chordless_cycle(H: Hypergraph) -> list[str] | None:
    """Vertices of a chordless cycle of length >= 4 in cyclic order, if any."""
    g = H.primal_graph()
    if nx.is_chordal(g):
        return None
    W = _minimise(list(H.vertices), lambda S: not nx.is_chordal(g.subgraph(S)))
    return _cycle_order(g, W)


@dataclass(frozen=True)
class PrimalReport:
    chordal: bool
    conformal: bool
    cycle: tuple | None = None
    clique: frozenset | None = None


def primal_chordal_conformal(H: Hypergraph) -> PrimalReport:
    cyc = chordless_cycle(H)
    clq = uncovered_clique(H)
    return PrimalReport(cyc is None, clq is None, tuple(cyc) if cyc else None, clq)


# ---------------------------------------------------------------------------
# acyclicity certificates


@dataclass
class AcyclicityCertificate:
    acyclic: bool
    # acyclic side: edge indices in running-intersection order and a join tree
    order: list = field(default_factory=list)
    parent: dict = field(default_factory=dict)
    gyo: list = field(default_factory=list)
    # cyclic side
    core_kind: str | None = None
    core_size: int | None = None
    W: list = field(default_factory=list)
    deletions: list = field(default_factory=list)
    core: Hypergraph | None = None
    labels: dict = field(default_factory=dict)

    @property
    def core_name(self) -> str | None:
        return None if self.acyclic else f"{self.core_kind}_{self.core_size}"

    def to_json(self, H: Hypergraph) -> dict:
        if self.acyclic:
            return {"verdict": "acyclic",
                    "order": self.order,
                    "listing": [H.sorted_edge(H.edges[i]) for i in self.order],
                    "join_tree": {str(k): v for k, v in self.parent.items()}}
        return {"verdict": "cyclic", "core": self.core_name, "W": self.W,
                "deletions": [s.to_json() for s in self.deletions],
                "core_edges": self.core.to_json()["edges"],
                "labels": self.labels}


def gyo(H: Hypergraph) -> tuple[bool, list[SafeDeletionStep], list[int]]:
    """Run the reduction; returns ``(emptied, steps, removal order of original edges)``."""
    cur = H
    ids = list(range(len(H.edges)))
    removed: list[int] = []
    steps: list[SafeDeletionStep] = []
    while cur.edges:
        cover = _first_cover(cur.edges)
        if cover is not None:
            i, j = cover
            cur, st = delete_covered_edge(cur, i, j)
            removed.append(ids.pop(i))
            steps.append(st)
            continue
        lonely = [v for v in cur.vertices if cur.degree(v) <= 1]
        if not lonely:
            return False, steps, removed
        cur, st = delete_vertex(cur, lonely[0])
        for i in reversed(st.dropped):
            removed.append(ids.pop(i))
        steps.append(st)
    return True, steps, removed


def running_intersection_parent(edges: Sequence[frozenset], order: Sequence[int]) -> dict | None:
    """Parent map realising the running-intersection property, or ``None``."""
    parent: dict[int, int | None] = {}
    seen: set = set()
    for pos, i in enumerate(order):
        if pos == 0:
            parent[i] = None
        else:
            inter = edges[i] & seen
            best = None
            for j in order[:pos]:
                if inter <= edges[j]:
                    best = j
                    if edges[j] & edges[i]:
                        break
            if best is None:
                return None
            parent[i] = best
        seen |= edges[i]
    return parent


def join_tree_ok(H: Hypergraph, parent: dict) -> bool:
    """Every vertex's edges form a connected subtree of the parent-map tree."""
    g = nx.Graph()
    g.add_nodes_from(parent)
    g.add_edges_from((i, p) for i, p in parent.items() if p is not None)
    if len(parent) != len(H.edges) or not (len(parent) == 0 or nx.is_tree(g)):
        return False
    for v in H.vertices:
        nodes = [i for i, e in enumerate(H.edges) if v in e]
        if nodes and not nx.is_connected(g.subgraph(nodes)):
            return False
    return True


def _reroot(parent: dict) -> tuple[list[int], dict]:
    # breadth-first from the lowest edge index; any such traversal of a join
    # tree is again a running-intersection listing
    if not parent:
        return [], {}
    adj: dict[int, list[int]] = {i: [] for i in parent}
    for i, p in parent.items():
        if p is not None:
            adj[i].append(p)
            adj[p].append(i)
    root = min(parent)
    order, new_parent, frontier = [root], {root: None}, [root]
    while frontier:
        nxt = []
        for u in frontier:
            for w in sorted(adj[u]):
                if w not in new_parent:
                    new_parent[w] = u
                    order.append(w)
                    nxt.append(w)
        frontier = nxt
    return order, new_parent


def identify_core(core: Hypergraph) -> tuple[str, dict] | None:
    """Match a reduced hypergraph against ``C_n`` or ``H_n``; returns kind and labelling."""
    n = len(core.vertices)
    if n < 3 or len(core.edges) != n or len(set(core.edges)) != n:
        return None
    V = list(core.vertices)
    if n >= 4 and core.is_uniform(2) and core.is_regular(2):
        g = core.primal_graph()
        if not nx.is_connected(g):
            return None
        cyc = _cycle_order(g, V)
        if len(cyc) != n:
            return None
        return "C", {v: f"A{i + 1}" for i, v in enumerate(cyc)}
    if core.is_uniform(n - 1) and core.is_regular(n - 1):
        missing = [next(iter(set(V) - e)) for e in core.edges]
        if len(set(missing)) != n:
            return None
        return "H", {v: f"A{i + 1}" for i, v in enumerate(missing)}
    return None


def check_acyclic(H: Hypergraph) -> AcyclicityCertificate:
    ok, steps, removed = gyo(H)
    if ok:
        order = list(reversed(removed))
        parent = running_intersection_parent(H.edges, order)
        if parent is None:  # pragma: no cover - guaranteed by the reduction
            raise HypergraphError("reduction emptied the hypergraph but no listing was found")
        order, parent = _reroot(parent)
        return AcyclicityCertificate(True, order=order, parent=parent, gyo=steps)
    g = H.primal_graph()
    if not nx.is_chordal(g):
        W = _minimise(list(H.vertices), lambda S: not nx.is_chordal(g.subgraph(S)))
        kind = "C"
    else:
        W = _minimise(list(H.vertices), lambda S: not is_conformal(induced(H, S)))
        kind = "H"
    W = [v for v in H.vertices if v in set(W)]
    deletions: list[SafeDeletionStep] = []
    cur = H
    for v in H.vertices:
        if v not in W:
            cur, st = delete_vertex(cur, v)
            deletions.append(st)
    while True:
        cover = _first_cover(cur.edges)
        if cover is None:
            break
        cur, st = delete_covered_edge(cur, *cover)
        deletions.append(st)
    found = identify_core(cur)
    if found is None or found[0] != kind:  # pragma: no cover - the minimal core is always C_n or H_n
        raise HypergraphError(f"extracted core {cur} is not a named cyclic core")
    return AcyclicityCertificate(False, core_kind=kind, core_size=len(W), W=W,
                                 deletions=deletions, core=cur, labels=found[1], gyo=steps)


__all__ = [
    "Hypergraph", "HypergraphError", "SafeDeletionStep", "AcyclicityCertificate",
    "PrimalReport", "reduce", "induced", "make_named", "delete_vertex",
    "delete_covered_edge", "apply_step", "replay", "gyo", "check_acyclic",
    "primal_chordal_conformal", "is_chordal", "is_conformal", "uncovered_clique",
    "chordless_cycle", "running_intersection_parent", "join_tree_ok", "identify_core",
]
