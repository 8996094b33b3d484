"""Random instances for property checks and the self-test."""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Sequence

from .hypergraph import Hypergraph
from .monoids import Free, Fuzzy, GapRationals, Monoid, Naturals, Power, Powerset, Rationals
from .relations import KRelation


def random_element(m: Monoid, rng: random.Random):
    """A random nonzero element of moderate size."""
    if isinstance(m, Free):
        gens = list(m.index or ("x", "y", "z"))
        k = rng.randint(1, min(2, len(gens)))
        return m.make({g: rng.randint(1, 3) for g in rng.sample(gens, k)})
    if isinstance(m, Power):
        keys = list(m.index or ("i", "j", "k"))
        k = rng.randint(1, min(2, len(keys)))
        return m.make({g: random_element(m.base, rng) for g in rng.sample(keys, k)})
    if isinstance(m, Naturals):
        return rng.randint(1, 5)
    if isinstance(m, Rationals):
        return Fraction(rng.randint(1, 9), rng.randint(1, 6))
    if isinstance(m, GapRationals):
        return m.threshold + Fraction(rng.randint(0, 6), rng.randint(1, 4))
    if isinstance(m, Fuzzy):
        return Fraction(rng.randint(1, 10), 10)
    if isinstance(m, Powerset):
        k = rng.randint(1, len(m.universe))
        return frozenset(rng.sample(m.universe, k))
    if m.caps.finite:
        return rng.choice([x for x in m.enumerate() if not m.is_zero(x)])
    raise ValueError(f"no random elements for {m.name}")


def split(m: Monoid, v, parts: int, rng: random.Random) -> list:
    """Random nonzero summands adding up to ``v`` (at most ``parts`` of them)."""
    if m.is_zero(v) or parts <= 1:
        return [v]
    if isinstance(m, Naturals):
        parts = min(parts, v)
        cuts = sorted(rng.sample(range(1, v), parts - 1)) if parts > 1 else []
        bounds = [0] + cuts + [v]
        return [bounds[i + 1] - bounds[i] for i in range(len(bounds) - 1)]
    if isinstance(m, Rationals):
        weights = [Fraction(rng.randint(1, 5)) for _ in range(parts)]
        s = sum(weights)
        return [v * w / s for w in weights]
    if m.caps.lattice:
        out = [v]
        for _ in range(parts - 1):
            x = m.mul(v, random_element(m, rng))
            if not m.is_zero(x):
                out.append(x)
        rng.shuffle(out)
        return out
    if isinstance(m, Power):
        keys = list(v.keys())
        per_key = {k: split(m.base, v[k], rng.randint(1, parts), rng) for k in keys}
        n = max(len(p) for p in per_key.values())
        out = [m.make({k: p[i] for k, p in per_key.items() if i < len(p)}) for i in range(n)]
        return [x for x in out if not m.is_zero(x)]
    if m.caps.finite:
        # rejection sampling over the finite universe
        nz = [x for x in m.enumerate() if not m.is_zero(x)]
        for _ in range(50):
            xs = [rng.choice(nz) for _ in range(rng.randint(1, parts))]
            if m.sum(xs) == v:
                return xs
        return [v]
    return [v]


def random_relation(m: Monoid, attrs: Sequence[str], domain_size: int, support: int,
                    rng: random.Random) -> KRelation:
    doms = {a: [f"{a.lower()}{i}" for i in range(1, domain_size + 1)] for a in attrs}
    data = {}
    for _ in range(support):
        t = tuple(rng.choice(doms[a]) for a in attrs)
        data[t] = random_element(m, rng)
    return KRelation(m, attrs, data, domains=doms)


def random_inner_consistent_pair(m: Monoid, rng: random.Random, max_support: int = 12,
                                 domain_size: int = 3) -> tuple[KRelation, KRelation]:
    """``R(AB)`` at random, then ``S(BC)`` by splitting each ``R[B]`` value over new C-values."""
    R = random_relation(m, "AB", domain_size, rng.randint(1, max_support), rng)
    RB = R.marginal("B")
    c_vals = [f"c{i}" for i in range(1, domain_size + 2)]
    data = {}
    budget = max_support
    for (b,), v in RB.items():
        pieces = split(m, v, rng.randint(1, max(1, min(len(c_vals), budget))), rng)
        cs = rng.sample(c_vals, len(pieces))
        for c, p in zip(cs, pieces):
            data[(b, c)] = p
        budget = max(1, budget - len(pieces))
    doms = {"B": R.domains["B"], "C": c_vals}
    S = KRelation(m, "BC", data, domains=doms)
    return R, S


def random_hypergraph(rng: random.Random, max_vertices: int = 6, max_edges: int = 6) -> Hypergraph:
    n = rng.randint(1, max_vertices)
    V = [f"A{i}" for i in range(1, n + 1)]
    E = [rng.sample(V, rng.randint(1, n)) for _ in range(rng.randint(1, max_edges))]
    return Hypergraph(V, E)


def random_acyclic_schema(rng: random.Random, max_edges: int = 4) -> list[list[str]]:
    """Edges grown one at a time, each sharing a subset of one earlier edge."""
    fresh = iter(f"X{i}" for i in range(100))
    edges = [[next(fresh) for _ in range(rng.randint(1, 3))]]
    for _ in range(rng.randint(0, max_edges - 1)):
        host = rng.choice(edges)
        shared = rng.sample(host, rng.randint(0, len(host)))
        edges.append(shared + [next(fresh) for _ in range(rng.randint(1, 2))])
    return edges


def random_consistent_collection(m: Monoid, edges: Sequence[Sequence[str]], rng: random.Random,
                                 max_support: int = 20, domain_size: int = 3) -> tuple[KRelation, list[KRelation]]:
    """Marginals of one random relation over the union of the edges."""
    attrs = sorted({a for e in edges for a in e})
    W = random_relation(m, attrs, domain_size, rng.randint(1, max_support), rng)
    return W, [W.marginal(e).renamed(f"R{i + 1}") for i, e in enumerate(edges)]


__all__ = [
    "random_element", "split", "random_relation", "random_inner_consistent_pair",
    "random_hypergraph", "random_acyclic_schema", "random_consistent_collection",
]
