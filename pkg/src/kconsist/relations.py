"""Finite-support K-relations: tuples over named attributes annotated by monoid elements."""

from __future__ import annotations

import itertools
from collections.abc import Mapping
from typing import Any, Iterable, Iterator, Sequence

from .monoids import Monoid, MonoidError


class RelationError(ValueError):
    pass


def _value_key(v):
    return (type(v).__name__, v)


class KRelation:
    """A K-relation ``R : Tup(X) -> K`` with finite support.

    Attributes are kept sorted by name and every tuple is a plain Python tuple
    aligned with :attr:`attrs`. Zero annotations are dropped on construction,
    so the stored keys are exactly the support.

    ``domains`` maps each attribute to an ordered list of admissible values.
    When omitted, the domain of an attribute is the sorted set of values seen in
    the support. Declared domains reject out-of-domain tuples.
    """

    __slots__ = ("monoid", "attrs", "domains", "name", "_data", "_pos", "_hash")

    def __init__(self, monoid: Monoid, attrs: Iterable[str], items: Mapping | Iterable = (),
                 domains: Mapping[str, Sequence] | None = None, name: str | None = None,
                 validate: bool = True):
        given = tuple(str(a) for a in attrs)
        if len(set(given)) != len(given):
            raise RelationError(f"duplicate attribute in {given}")
        order = sorted(range(len(given)), key=lambda i: given[i])
        self.attrs = tuple(given[i] for i in order)
        self._pos = {a: i for i, a in enumerate(self.attrs)}
        self.monoid = monoid
        self.name = name
        pairs = items.items() if isinstance(items, Mapping) else items
        data: dict[tuple, Any] = {}
        for t, v in pairs:
            if isinstance(t, Mapping):
                if set(t) != set(given):
                    raise RelationError(f"tuple {dict(t)} does not range over {list(self.attrs)}")
                key = tuple(t[a] for a in self.attrs)
            else:
                t = tuple(t)
                if len(t) != len(given):
                    raise RelationError(f"tuple {t} has wrong arity for {list(given)}")
                key = tuple(t[i] for i in order)
            if validate and not monoid.contains(v):
                raise MonoidError(f"{v!r} is not an element of {monoid.name}")
            if monoid.is_zero(v):
                continue
            if key in data:
                raise RelationError(f"tuple {key} listed twice")
            data[key] = v
        if domains is None:
            doms = {a: tuple(sorted({t[i] for t in data}, key=_value_key))
                    for i, a in enumerate(self.attrs)}
        else:
            doms = {}
            for i, a in enumerate(self.attrs):
                if a not in domains:
                    raise RelationError(f"no domain declared for attribute {a!r}")
                dom = tuple(domains[a])
                doms[a] = dom
                allowed = set(dom)
                for t in data:
                    if t[i] not in allowed:
                        raise RelationError(f"value {t[i]!r} outside the domain of {a!r}")
        self.domains = doms
        self._data = data
        self._hash = None

    # access -----------------------------------------------------------------
    def __len__(self) -> int:
        return len(self._data)

    def __bool__(self) -> bool:
        return bool(self._data)

    def __contains__(self, t) -> bool:
        return self._key(t) in self._data

    def _key(self, t) -> tuple:
        if isinstance(t, Mapping):
            return tuple(t[a] for a in self.attrs)
        return tuple(t)

    def __getitem__(self, t):
        """Annotation of a tuple; zero outside the support."""
        return self._data.get(self._key(t), self.monoid.zero)

    def sort_key(self, t: tuple):
        out = []
        for a, v in zip(self.attrs, t):
            dom = self.domains.get(a, ())
            try:
                out.append((0, dom.index(v), ""))
            except ValueError:
                out.append((1, 0, repr(_value_key(v))))
        return tuple(out)

    def tuples(self) -> list[tuple]:
        """Support tuples in canonical order."""
        return sorted(self._data, key=self.sort_key)

    def items(self) -> list[tuple[tuple, Any]]:
        return [(t, self._data[t]) for t in self.tuples()]

    def rows(self) -> Iterator[tuple[dict, Any]]:
        for t, v in self.items():
            yield dict(zip(self.attrs, t)), v

    def as_dict(self) -> dict:
        return dict(self._data)

    def support(self) -> frozenset:
        return frozenset(self._data)

    def attr_set(self) -> frozenset:
        return frozenset(self.attrs)

    def project_tuple(self, t: tuple, Y: Sequence[str]) -> tuple:
        return tuple(t[self._pos[a]] for a in Y)

    # algebra ----------------------------------------------------------------
    def marginal(self, Y: Iterable[str]) -> "KRelation":
        """``R[Y](t) = sum of R(r)`` over support tuples ``r`` with ``r[Y] = t``."""
        Y = sorted(set(Y))
        missing = [a for a in Y if a not in self._pos]
        if missing:
            raise RelationError(f"{missing} not among the attributes {list(self.attrs)}")
        m = self.monoid
        acc: dict[tuple, Any] = {}
        for t, v in self._data.items():
            k = self.project_tuple(t, Y)
            acc[k] = m.add(acc[k], v) if k in acc else v
        return KRelation(m, Y, acc, domains={a: self.domains[a] for a in Y},
                         validate=False)

    def total(self):
        """The annotation of the empty tuple in ``R[∅]``."""
        return self.monoid.sum(self._data.values())

    def map_annotations(self, fn, monoid: Monoid) -> "KRelation":
        return KRelation(monoid, self.attrs, {t: fn(v) for t, v in self._data.items()},
                         domains=self.domains, name=self.name)

    def with_domains(self, domains: Mapping[str, Sequence]) -> "KRelation":
        return KRelation(self.monoid, self.attrs, self._data,
                         domains={a: domains[a] for a in self.attrs}, name=self.name,
                         validate=False)

    def renamed(self, name: str | None) -> "KRelation":
        return KRelation(self.monoid, self.attrs, self._data, domains=self.domains,
                         name=name, validate=False)

    # equality ---------------------------------------------------------------
    def __eq__(self, other):
        if not isinstance(other, KRelation):
            return NotImplemented
        return (self.monoid == other.monoid and self.attrs == other.attrs
                and self._data == other._data)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.monoid, self.attrs, frozenset(self._data.items())))
        return self._hash

    def __repr__(self):
        label = f"{self.name}" if self.name else "R"
        body = ", ".join(f"{''.join(map(str, t))}:{self.monoid.render(v)}"
                         for t, v in self.items()[:8])
        more = ", ..." if len(self) > 8 else ""
        return f"<{label}({','.join(self.attrs)}) over {self.monoid.name}: {{{body}{more}}}>"

    def describe(self) -> str:
        """Multi-line table, one support tuple per line."""
        head = f"{self.name or 'R'}({' '.join(self.attrs)}) over {self.monoid.name}"
        lines = [head]
        for t, v in self.items():
            lines.append("  " + " ".join(map(str, t)) + " : " + self.monoid.render(v))
        return "\n".join(lines)


def marginal(R: KRelation, Y: Iterable[str]) -> KRelation:
    return R.marginal(Y)


def support(R: KRelation) -> frozenset:
    return R.support()


def project(tuples: Iterable[tuple], attrs: Sequence[str], Y: Iterable[str]) -> frozenset:
    """Projection of an ordinary relation over ``attrs`` onto ``Y`` (sorted)."""
    pos = {a: i for i, a in enumerate(attrs)}
    Y = sorted(set(Y))
    return frozenset(tuple(t[pos[a]] for a in Y) for t in tuples)


def inner_consistent(R: KRelation, S: KRelation) -> tuple[bool, KRelation, KRelation]:
    """Compare the marginals on the common attributes.

    Returns ``(ok, R[Z], S[Z])`` with ``Z = X ∩ Y``.
    """
    if R.monoid != S.monoid:
        raise RelationError(f"monoid mismatch: {R.monoid.name} vs {S.monoid.name}")
    Z = sorted(R.attr_set() & S.attr_set())
    RZ, SZ = R.marginal(Z), S.marginal(Z)
    return RZ.as_dict() == SZ.as_dict(), RZ, SZ


def tuple_space(attrs: Sequence[str], domains: Mapping[str, Sequence]) -> Iterator[tuple]:
    return itertools.product(*(domains[a] for a in attrs))


def merged_domains(relations: Iterable[KRelation]) -> dict[str, tuple]:
    """Union of per-attribute domains, keeping first-seen order."""
    out: dict[str, list] = {}
    for R in relations:
        for a in R.attrs:
            seen = out.setdefault(a, [])
            for v in R.domains[a]:
                if v not in seen:
                    seen.append(v)
    return {a: tuple(v) for a, v in out.items()}


def verify_witness(W: KRelation, parts: Sequence[KRelation]) -> bool:
    """True iff ``W[attrs(R)] == R`` for every part."""
    for R in parts:
        if not R.attr_set() <= W.attr_set():
            raise RelationError(f"witness attributes {list(W.attrs)} do not cover {list(R.attrs)}")
        if W.monoid != R.monoid:
            raise RelationError("witness and part live over different monoids")
        if W.marginal(R.attrs).as_dict() != R.as_dict():
            return False
    return True
