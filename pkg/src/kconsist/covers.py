"""Covers ``h : K* -> K``, lifts of relations, and consistency up to a cover."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Any, Callable, Iterable, Mapping, Sequence

from .consistency import (ConsistencyError, Counterexample, chase_acyclic, check_pair,
                          generate_counterexample, schema_of)
from .hypergraph import AcyclicityCertificate, Hypergraph, check_acyclic
from .monoids import Free, Monoid, Naturals, make_builtin
from .relations import KRelation, verify_witness


class CoverError(ValueError):
    pass


@dataclass(frozen=True)
class Cover:
    """A surjective homomorphism from ``upstairs`` onto ``downstairs``.

    ``preimage`` picks, for each element of ``downstairs``, some element mapping
    onto it.
    """

    upstairs: Monoid
    downstairs: Monoid
    map: Callable[[Any], Any]
    preimage: Callable[[Any], Any]
    kind: str = "custom"

    def __call__(self, x):
        return self.map(x)

    def descriptor(self) -> dict:
        if self.kind == "custom":
            return {"kind": "finite-map", "upstairs": self.upstairs.descriptor(),
                    "map": [[self.upstairs.to_literal(x), self.downstairs.to_literal(self.map(x))]
                            for x in self.upstairs.enumerate()]}
        return {"kind": self.kind}

    def homomorphism_violations(self, samples: Iterable) -> list[str]:
        S = list(samples)
        out = []
        if self.map(self.upstairs.zero) != self.downstairs.zero:
            out.append("zero is not sent to zero")
        for a, b in itertools.product(S, repeat=2):
            lhs = self.map(self.upstairs.add(a, b))
            rhs = self.downstairs.add(self.map(a), self.map(b))
            if lhs != rhs:
                out.append(f"h({a!r} + {b!r}) = {lhs!r} but h({a!r}) + h({b!r}) = {rhs!r}")
        return out


def free_cover(m: Monoid) -> Cover:
    """``F(K⁺) -> K`` sending a linear form ``Σ c(x) x`` to ``Σ c(x) g(x)``.

    Generators are named by the canonical rendering of the element they stand
    for, and are created on demand.
    """
    up = Free()

    def evaluate(f):
        return m.sum(m.times(n, m.unrender(name)) for name, n in f.items())

    def choose(a):
        if m.is_zero(a):
            return up.zero
        return up.generator(m.render(a))

    return Cover(up, m, evaluate, choose, "free")


def identity_cover(m: Monoid) -> Cover:
    return Cover(m, m, lambda x: x, lambda x: x, "identity")


def truncation_cover(cap: int = 2) -> Cover:
    """``N -> N2`` (or another truncation), rounding sums down to ``cap``."""
    down = make_builtin("N2") if cap == 2 else make_builtin("truncated", {"cap": cap})
    return Cover(Naturals(), down, lambda n: min(n, cap), lambda a: a, "truncation")


def finite_map_cover(upstairs: Monoid, downstairs: Monoid, mapping: Mapping) -> Cover:
    """Cover given by an explicit table over a finite upstairs monoid.

    The homomorphism laws and surjectivity are checked exhaustively.
    """
    table = dict(mapping)
    elems = upstairs.enumerate()
    if set(table) != set(elems):
        raise CoverError("the map must list every upstairs element exactly once")
    for x, y in table.items():
        downstairs.check(y)
    cv = Cover(upstairs, downstairs, table.__getitem__, lambda a: pre[a], "custom")
    bad = cv.homomorphism_violations(elems)
    if bad:
        raise CoverError(bad[0])
    pre: dict = {}
    for x in elems:
        pre.setdefault(table[x], x)
    if downstairs.caps.finite and set(pre) != set(downstairs.enumerate()):
        raise CoverError("the map is not surjective")
    return cv


def make_cover(spec: Mapping | str, m: Monoid) -> Cover:
    """Cover from a descriptor such as ``{"kind": "free"}``."""
    if isinstance(spec, str):
        spec = {"kind": spec}
    kind = spec.get("kind", "free")
    if kind == "free":
        return free_cover(m)
    if kind == "identity":
        return identity_cover(m)
    if kind == "truncation":
        cv = truncation_cover(spec.get("cap", 2))
        if cv.downstairs != m:
            raise CoverError(f"truncation cover lands in {cv.downstairs.name}, not {m.name}")
        return cv
    if kind == "finite-map":
        from .monoids import from_descriptor

        up = from_descriptor(spec["upstairs"])
        mapping = {up.parse(a): m.parse(b) for a, b in spec["map"]}
        return finite_map_cover(up, m, mapping)
    raise CoverError(f"unknown cover kind {kind!r}")


# ---------------------------------------------------------------------------
# lifts


@dataclass(frozen=True)
class LiftedRelation:
    base: KRelation
    lifted: KRelation
    cover: Cover

    def check(self) -> bool:
        """``h ∘ lifted == base`` tuple by tuple."""
        return push_down(self.lifted, self.cover).as_dict() == self.base.as_dict() \
            and self.lifted.attrs == self.base.attrs


def canonical_lift(R: KRelation, cv: Cover) -> LiftedRelation:
    """Lift every annotation to its chosen preimage (the generator named after it)."""
    if R.monoid != cv.downstairs:
        raise CoverError("relation does not live over the cover's target")
    L = KRelation(cv.upstairs, R.attrs, {t: cv.preimage(v) for t, v in R.items()},
                  domains=R.domains, name=R.name, validate=False)
    out = LiftedRelation(R, L, cv)
    if not out.check():
        raise CoverError("the cover's preimage chooser is not a section")
    return out


def push_down(W: KRelation, cv: Cover) -> KRelation:
    """``h ∘ W``; annotations sent to zero disappear from the support."""
    if W.monoid != cv.upstairs:
        raise CoverError("relation does not live over the cover's source")
    return W.map_annotations(cv.map, cv.downstairs)


def lift_global_witness(W: KRelation, parts: Sequence[KRelation],
                        cv: Cover) -> tuple[list[LiftedRelation], KRelation]:
    """Lift a global witness and take marginals upstairs: ``R_i* = W*[Y_i]``."""
    if not verify_witness(W, parts):
        raise CoverError("W does not witness the consistency of the given relations")
    W_star = canonical_lift(W, cv).lifted
    lifts = [LiftedRelation(R, W_star.marginal(R.attrs).renamed(R.name), cv) for R in parts]
    for L in lifts:
        if not L.check():  # pragma: no cover - h is a homomorphism
            raise CoverError("lifted marginal does not map onto its base relation")
    return lifts, W_star


def chase_up_to_free_cover(lifts: Sequence[LiftedRelation],
                           cert: AcyclicityCertificate | None = None) -> KRelation:
    """Chase the lifted relations upstairs and push the result down."""
    if not lifts:
        raise CoverError("need at least one lifted relation")
    cv = lifts[0].cover
    for L in lifts:
        if not L.check():
            raise CoverError(f"{L.lifted.name or 'a lift'} does not map onto its base relation")
    ups = [L.lifted for L in lifts]
    for i, j in itertools.combinations(range(len(ups)), 2):
        v = check_pair(ups[i], ups[j], indices=(i, j))
        if not v.consistent:
            raise CoverError(f"lifts {i} and {j} are not consistent upstairs ({v.reason})")
    if cert is None:
        cert = check_acyclic(schema_of(ups))
    W_star = chase_acyclic(ups, cert)
    W = push_down(W_star, cv)
    if not verify_witness(W, [L.base for L in lifts]):  # pragma: no cover - absoluteness
        raise ConsistencyError("pushed-down witness does not verify")
    return W


@dataclass
class CoverCounterexample:
    base: Counterexample
    upstairs: Counterexample
    lifts: list
    cover: Cover


def generate_cover_counterexample(H: Hypergraph, m: Monoid, c, cv: Cover,
                                  c_star=None) -> CoverCounterexample:
    """Cyclic-schema relations whose lifts with ``a* = d^k c*`` stay pairwise consistent."""
    if cv.downstairs != m:
        raise CoverError("cover does not land in the given monoid")
    if c_star is None:
        c_star = cv.preimage(c)
    if cv.map(c_star) != c:
        raise CoverError("the chosen upstairs element does not map onto c")
    base = generate_counterexample(H, m, c)
    up = generate_counterexample(H, cv.upstairs, c_star)
    lifts = [LiftedRelation(R, L.renamed(R.name), cv) for R, L in zip(base.relations, up.relations)]
    for L in lifts:
        if not L.check():  # pragma: no cover - h commutes with marginals
            raise CoverError("lifted counterexample does not map onto the base relations")
    return CoverCounterexample(base, up, lifts, cv)


# ---------------------------------------------------------------------------
# bounded lift search


@dataclass
class LiftSearchResult:
    lifts: list | None
    combinations: int
    checked_pairs: int

    @property
    def found(self) -> bool:
        return self.lifts is not None


def _lift_options(R: KRelation, cv: Cover, pool: Sequence) -> list[KRelation]:
    choices = []
    for t, v in R.items():
        pre = [x for x in pool if not cv.upstairs.is_zero(x) and cv.map(x) == v]
        choices.append([(t, x) for x in pre])
    return [KRelation(cv.upstairs, R.attrs, dict(combo), domains=R.domains, name=R.name,
                      validate=False) for combo in itertools.product(*choices)]


def find_pairwise_consistent_lifts(relations: Sequence[KRelation], cv: Cover,
                                   pool: Sequence) -> LiftSearchResult:
    """Search lifts with annotations drawn from ``pool`` for a pairwise consistent choice.

    Lifts are chosen relation by relation; a partial choice is abandoned as soon
    as some pair of chosen lifts is inconsistent upstairs.
    """
    options = [_lift_options(R, cv, pool) for R in relations]
    total = 1
    for o in options:
        total *= len(o)
    stats = {"pairs": 0}
    chosen: list[KRelation] = []

    def extend(i: int) -> bool:
        if i == len(options):
            return True
        for L in options[i]:
            ok = True
            for j, P in enumerate(chosen):
                stats["pairs"] += 1
                if not check_pair(P, L, indices=(j, i)).consistent:
                    ok = False
                    break
            if ok:
                chosen.append(L)
                if extend(i + 1):
                    return True
                chosen.pop()
        return False

    if extend(0):
        lifts = [LiftedRelation(R, L, cv) for R, L in zip(relations, chosen)]
        return LiftSearchResult(lifts, total, stats["pairs"])
    return LiftSearchResult(None, total, stats["pairs"])


__all__ = [
    "Cover", "CoverError", "LiftedRelation", "CoverCounterexample", "LiftSearchResult",
    "free_cover", "identity_cover", "truncation_cover", "finite_map_cover", "make_cover",
    "canonical_lift", "push_down", "lift_global_witness", "chase_up_to_free_cover",
    "generate_cover_counterexample", "find_pairwise_consistent_lifts",
]
