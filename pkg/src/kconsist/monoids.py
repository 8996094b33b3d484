"""Positive commutative monoids, their capability records, and the built-in catalog.

Every element is an immutable, canonical Python value, so structural equality is
semantic equality:

* ``N``, ``N2``, truncated naturals, bounded orders, finite tables: ``int`` (or
  ``str`` for user tables)
* ``Q``, ``R1``, fuzzy: :class:`fractions.Fraction`
* powersets: ``frozenset``
* finite-support powers: :class:`PowerElement`; free monoids: :class:`FreeElement`

Capabilities are declared per catalog entry rather than inferred by sampling.
Finite tables are the exception: their declared flags are verified
exhaustively when the table is built.
"""

from __future__ import annotations

import itertools
import json
from collections.abc import Mapping
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from typing import Any, Hashable, Iterable, Iterator, Sequence


class MonoidError(ValueError):
    """Unknown monoid, bad parameters, or an element outside the universe."""


class CapabilityError(MonoidError):
    """The operation needs a capability the monoid does not declare."""


@dataclass(frozen=True)
class Capabilities:
    finite: bool = False
    preorder: bool = False
    weakly_cancellative: bool = False
    total: bool = False
    semiring: bool = False
    # additively absorptive and multiplicatively idempotent (bounded distributive lattice)
    lattice: bool = False
    semifield: bool = False
    power: bool = False
    # every downset {x : x ⊑ c} is finite and enumerable
    bounded: bool = False

    @property
    def northwest(self) -> bool:
        """Whether the northwest corner method is guaranteed to apply."""
        return self.preorder and self.weakly_cancellative and self.total

    def names(self) -> list[str]:
        flags = [k for k, v in self.__dict__.items() if v]
        if self.northwest:
            flags.append("northwest")
        return flags


# ---------------------------------------------------------------------------
# finite-support maps


class FMap(Mapping):
    """Immutable finite-support map from string keys to nonzero values."""

    __slots__ = ("_data", "_items", "_hash")

    def __init__(self, items: Mapping | Iterable = (), zero: Any = 0):
        pairs = items.items() if isinstance(items, Mapping) else items
        data = {}
        for k, v in pairs:
            if v != zero:
                data[str(k)] = v
        self._items = tuple(sorted(data.items(), key=lambda kv: kv[0]))
        self._data = dict(self._items)
        self._hash = None

    def __getitem__(self, key):
        return self._data[key]

    def __iter__(self) -> Iterator[str]:
        return (k for k, _ in self._items)

    def __len__(self) -> int:
        return len(self._items)

    def __eq__(self, other):
        if isinstance(other, FMap):
            return self._items == other._items
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((FMap, self._items))
        return self._hash

    def __lt__(self, other):
        return self._items < other._items

    def __repr__(self):
        return f"{type(self).__name__}({dict(self._items)!r})"


class PowerElement(FMap):
    """Element of a finite-support power: index key -> nonzero base element."""

    __slots__ = ()


class FreeElement(PowerElement):
    """Linear form with non-negative integer coefficients over generator names."""

    __slots__ = ()

    def __str__(self):
        if not self:
            return "0"
        def gen(name):
            return name if name.isidentifier() else f"[{name}]"

        return " + ".join(gen(n) if c == 1 else f"{c}{gen(n)}" for n, c in self.items())


# ---------------------------------------------------------------------------
# base class


class Monoid:
    """A positive commutative monoid ``(K, +, 0)``.

    Subclasses implement :meth:`add`, :meth:`contains`, literal conversion and
    whichever optional operations their :class:`Capabilities` declare.
    """

    name: str = "?"
    zero: Any = 0
    caps: Capabilities = Capabilities()

    # identity ---------------------------------------------------------------
    def key(self) -> tuple:
        return (type(self).__name__, self.name)

    def __eq__(self, other):
        return isinstance(other, Monoid) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return f"<monoid {self.name}>"

    def descriptor(self) -> dict:
        return {"name": self.name}

    # arithmetic --------------------------------------------------------------
    def add(self, p, q):
        raise NotImplementedError

    def contains(self, p) -> bool:
        raise NotImplementedError

    def check(self, p):
        if not self.contains(p):
            raise MonoidError(f"{p!r} is not an element of {self.name}")
        return p

    def sum(self, items: Iterable):
        return reduce(self.add, items, self.zero)

    def times(self, n: int, p):
        """``p + p + ... + p`` with ``n`` summands (zero when ``n == 0``)."""
        if n < 0:
            raise ValueError("n must be non-negative")
        acc, base = self.zero, p
        while n:
            if n & 1:
                acc = self.add(acc, base)
            base = self.add(base, base)
            n >>= 1
        return acc

    def is_zero(self, p) -> bool:
        return p == self.zero

    # optional capabilities ---------------------------------------------------
    def _need(self, flag: str):
        if not getattr(self.caps, flag):
            raise CapabilityError(f"{self.name} does not declare the '{flag}' capability")

    def try_subtract(self, b, c):
        """Return some ``a`` with ``b + a == c``, or ``None`` if ``b`` is not below ``c``."""
        self._need("preorder")
        return self._subtract(b, c)

    def _subtract(self, b, c):
        raise NotImplementedError

    def leq(self, b, c) -> bool:
        return self.try_subtract(b, c) is not None

    def enumerate(self) -> list:
        """Every element exactly once, zero first."""
        self._need("finite")
        return list(self._elements())

    def _elements(self) -> Iterable:
        raise NotImplementedError

    def below(self, c) -> list:
        """All ``x`` with ``x ⊑ c``; finite for finite or bounded monoids."""
        if self.caps.finite:
            return [x for x in self._elements() if self._below_finite(x, c)]
        self._need("bounded")
        return list(self._below(c))

    def _below_finite(self, x, c) -> bool:
        if self.caps.preorder:
            return self._subtract(x, c) is not None
        return any(self.add(x, y) == c for y in self._elements())

    def _below(self, c) -> Iterable:
        raise NotImplementedError

    @property
    def one(self):
        self._need("semiring")
        return self._one

    def mul(self, p, q):
        self._need("semiring")
        return self._mul(p, q)

    def div(self, p, q):
        self._need("semifield")
        if self.is_zero(q):
            raise ZeroDivisionError(f"division by zero in {self.name}")
        return self._div(p, q)

    # literals ----------------------------------------------------------------
    def parse(self, literal):
        """Element from its JSON literal."""
        raise NotImplementedError

    def to_literal(self, p):
        return p

    def render(self, p) -> str:
        """Canonical, human-readable name of an element (used as a generator name)."""
        lit = self.to_literal(p)
        if isinstance(lit, str):
            return lit
        return json.dumps(lit, sort_keys=True, separators=(",", ":"))

    def unrender(self, name: str):
        try:
            lit = json.loads(name)
        except (json.JSONDecodeError, TypeError):
            lit = name
        try:
            return self.parse(lit)
        except MonoidError:
            return self.parse(name)

    def sort_key(self, p):
        return p


def _int_literal(lit) -> int:
    if isinstance(lit, bool) or not isinstance(lit, int):
        if isinstance(lit, str) and lit.strip().isdigit():
            return int(lit)
        raise MonoidError(f"expected a non-negative integer literal, got {lit!r}")
    return lit


def _fraction_literal(lit) -> Fraction:
    if isinstance(lit, bool):
        raise MonoidError(f"expected a rational literal, got {lit!r}")
    if isinstance(lit, (int, Fraction)):
        return Fraction(lit)
    if isinstance(lit, str):
        try:
            return Fraction(lit.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise MonoidError(f"bad rational literal {lit!r}") from exc
    raise MonoidError(f"expected a rational literal such as \"3/4\", got {lit!r}")


def _fraction_to_literal(p: Fraction) -> str:
    return str(p.numerator) if p.denominator == 1 else f"{p.numerator}/{p.denominator}"


# ---------------------------------------------------------------------------
# numeric monoids


class Naturals(Monoid):
    name = "N"
    zero = 0
    caps = Capabilities(preorder=True, weakly_cancellative=True, total=True,
                        semiring=True, bounded=True)
    _one = 1

    def add(self, p, q):
        return p + q

    def contains(self, p):
        return isinstance(p, int) and not isinstance(p, bool) and p >= 0

    def _subtract(self, b, c):
        return c - b if b <= c else None

    def _below(self, c):
        return range(c + 1)

    def _mul(self, p, q):
        return p * q

    def parse(self, literal):
        return self.check(_int_literal(literal))


class Truncated(Monoid):
    """Naturals ``{0, ..., cap}`` with addition rounded down to ``cap``."""

    def __init__(self, cap: int, name: str | None = None):
        if isinstance(cap, bool) or not isinstance(cap, int) or cap < 1:
            raise MonoidError(f"truncation cap must be an integer >= 1, got {cap!r}")
        self.cap = cap
        self.name = name or f"truncated({cap})"
        self.zero = 0
        self.caps = Capabilities(finite=True, preorder=True, total=True,
                                 weakly_cancellative=(cap == 1), bounded=True)

    def key(self):
        return ("Truncated", self.cap)

    def descriptor(self):
        if self.cap == 2:
            return {"name": "N2"}
        return {"name": "truncated", "cap": self.cap}

    def add(self, p, q):
        return min(p + q, self.cap)

    def contains(self, p):
        return isinstance(p, int) and not isinstance(p, bool) and 0 <= p <= self.cap

    def _subtract(self, b, c):
        return c - b if b <= c else None

    def _elements(self):
        return range(self.cap + 1)

    def parse(self, literal):
        return self.check(_int_literal(literal))


class Boolean(Monoid):
    """``({0, 1}, or, 0)`` with conjunction as multiplication."""

    name = "B"
    zero = 0
    caps = Capabilities(finite=True, preorder=True, weakly_cancellative=True, total=True,
                        semiring=True, lattice=True, semifield=True, bounded=True)
    _one = 1

    def add(self, p, q):
        return p | q

    def contains(self, p):
        return p in (0, 1) and not isinstance(p, bool)

    def _subtract(self, b, c):
        return c if b <= c else None

    def _elements(self):
        return (0, 1)

    def _mul(self, p, q):
        return p & q

    def _div(self, p, q):
        return p

    def parse(self, literal):
        if isinstance(literal, bool):
            return int(literal)
        return self.check(_int_literal(literal))


class Rationals(Monoid):
    name = "Q"
    zero = Fraction(0)
    caps = Capabilities(preorder=True, weakly_cancellative=True, total=True,
                        semiring=True, semifield=True)
    _one = Fraction(1)

    def add(self, p, q):
        return p + q

    def contains(self, p):
        return isinstance(p, Fraction) and p >= 0

    def _subtract(self, b, c):
        return c - b if b <= c else None

    def _mul(self, p, q):
        return p * q

    def _div(self, p, q):
        return p / q

    def parse(self, literal):
        return self.check(_fraction_literal(literal))

    def to_literal(self, p):
        return _fraction_to_literal(p)


class GapRationals(Monoid):
    """Rationals in ``{0} ∪ [threshold, ∞)`` under ordinary addition."""

    def __init__(self, threshold=Fraction(1)):
        threshold = _fraction_literal(threshold)
        if threshold <= 0:
            raise MonoidError("gap threshold must be positive")
        self.threshold = threshold
        self.name = "R1" if threshold == 1 else f"gap({_fraction_to_literal(threshold)})"
        self.zero = Fraction(0)
        # cancellative, but 1 and 3/2 are incomparable
        self.caps = Capabilities(preorder=True, weakly_cancellative=True)

    def key(self):
        return ("GapRationals", self.threshold)

    def descriptor(self):
        if self.threshold == 1:
            return {"name": "R1"}
        return {"name": "gap-rational", "threshold": _fraction_to_literal(self.threshold)}

    def add(self, p, q):
        return p + q

    def contains(self, p):
        return isinstance(p, Fraction) and (p == 0 or p >= self.threshold)

    def _subtract(self, b, c):
        a = c - b
        return a if self.contains(a) else None

    def parse(self, literal):
        return self.check(_fraction_literal(literal))

    def to_literal(self, p):
        return _fraction_to_literal(p)


class BoundedOrder(Monoid):
    """``({0, ..., top}, max, 0)``; a max/min lattice (access-control levels)."""

    def __init__(self, top: int):
        if isinstance(top, bool) or not isinstance(top, int) or top < 1:
            raise MonoidError(f"bounded-order top must be an integer >= 1, got {top!r}")
        self.top = top
        self.name = f"V({top})"
        self.zero = 0
        self._one = top
        self.caps = Capabilities(finite=True, preorder=True, total=True,
                                 weakly_cancellative=(top == 1), semiring=True,
                                 lattice=True, bounded=True)

    def key(self):
        return ("BoundedOrder", self.top)

    def descriptor(self):
        return {"name": "V", "max": self.top}

    def add(self, p, q):
        return max(p, q)

    def contains(self, p):
        return isinstance(p, int) and not isinstance(p, bool) and 0 <= p <= self.top

    def _subtract(self, b, c):
        return c if b <= c else None

    def _elements(self):
        return range(self.top + 1)

    def _mul(self, p, q):
        return min(p, q)

    def parse(self, literal):
        return self.check(_int_literal(literal))


class Fuzzy(Monoid):
    """Rationals in ``[0, 1]`` with ``max`` as addition and ``min`` as multiplication."""

    name = "fuzzy"
    zero = Fraction(0)
    caps = Capabilities(preorder=True, total=True, semiring=True, lattice=True)
    _one = Fraction(1)

    def add(self, p, q):
        return max(p, q)

    def contains(self, p):
        return isinstance(p, Fraction) and 0 <= p <= 1

    def _subtract(self, b, c):
        return c if b <= c else None

    def _mul(self, p, q):
        return min(p, q)

    def parse(self, literal):
        return self.check(_fraction_literal(literal))

    def to_literal(self, p):
        return _fraction_to_literal(p)


class Powerset(Monoid):
    """``(P(A), ∪, ∅)`` expanded with intersection as multiplication."""

    def __init__(self, universe: Iterable[str]):
        universe = tuple(sorted({str(a) for a in universe}))
        if not universe:
            raise MonoidError("powerset universe must be non-empty")
        self.universe = universe
        self.name = "P({" + ",".join(universe) + "})"
        self.zero = frozenset()
        self._one = frozenset(universe)
        self.caps = Capabilities(finite=True, preorder=True, total=(len(universe) == 1),
                                 weakly_cancellative=(len(universe) == 1),
                                 semiring=True, lattice=True, bounded=True)

    def key(self):
        return ("Powerset", self.universe)

    def descriptor(self):
        return {"name": "P", "universe": list(self.universe)}

    def add(self, p, q):
        return p | q

    def contains(self, p):
        return isinstance(p, frozenset) and p <= self._one

    def _subtract(self, b, c):
        return c - b if b <= c else None

    def _elements(self):
        u = self.universe
        for r in range(len(u) + 1):
            for combo in itertools.combinations(u, r):
                yield frozenset(combo)

    def _mul(self, p, q):
        return p & q

    def parse(self, literal):
        if not isinstance(literal, (list, tuple)):
            raise MonoidError(f"set literal must be an array of strings, got {literal!r}")
        return self.check(frozenset(str(a) for a in literal))

    def to_literal(self, p):
        return sorted(p)

    def sort_key(self, p):
        return (len(p), sorted(p))


class FiniteTable(Monoid):
    """A finite monoid given by its element list and full addition table.

    The table is checked exhaustively for closure, commutativity, associativity,
    neutrality of the first element and positivity. Declared capability flags
    are verified the same way.
    """

    def __init__(self, elements: Sequence[Hashable], table, name: str = "table",
                 weakly_cancellative: bool = False, total: bool = False):
        elements = list(elements)
        if len(elements) < 2 or len(set(elements)) != len(elements):
            raise MonoidError("a finite table needs at least two distinct elements")
        self.elements = tuple(elements)
        self.name = name
        self.zero = elements[0]
        idx = {e: i for i, e in enumerate(elements)}
        self._index = idx
        if isinstance(table, Mapping):
            tab = {}
            for (p, q), r in table.items():
                tab[p, q] = r
        else:
            rows = list(table)
            if len(rows) != len(elements) or any(len(r) != len(elements) for r in rows):
                raise MonoidError("addition table must be square over the element list")
            tab = {(p, q): rows[i][j] for i, p in enumerate(elements)
                   for j, q in enumerate(elements)}
        self._table = tab
        self._validate()
        self.caps = Capabilities(finite=True, preorder=True, bounded=True,
                                 weakly_cancellative=weakly_cancellative, total=total)
        if weakly_cancellative and not self._is_weakly_cancellative():
            raise MonoidError(f"{name}: declared weakly cancellative but the table is not")
        if total and not self._is_total():
            raise MonoidError(f"{name}: declared totally preordered but the table is not")

    def _validate(self):
        E = self.elements
        for p in E:
            for q in E:
                if (p, q) not in self._table or self._table[p, q] not in self._index:
                    raise MonoidError(f"{self.name}: table not closed at ({p!r}, {q!r})")
        violations = axiom_violations(self, E)
        if violations:
            raise MonoidError(f"{self.name}: {violations[0]}")

    def _is_weakly_cancellative(self):
        E, z = self.elements, self.zero
        return all(b == c or b == z or c == z
                   for a in E for b in E for c in E
                   if self.add(a, b) == self.add(a, c))

    def _is_total(self):
        E = self.elements
        return all(self._subtract(b, c) is not None or self._subtract(c, b) is not None
                   for b in E for c in E)

    def key(self):
        return ("FiniteTable", self.name, self.elements,
                tuple(sorted(self._table.items(), key=repr)))

    def descriptor(self):
        if self.name == "M2" and self == make_builtin("M2"):
            return {"name": "M2"}
        if self.name.startswith("P_") and self.name[2:].isdigit():
            k = int(self.name[2:])
            if self == make_builtin("Pk", {"k": k}):
                return {"name": "Pk", "k": k}
        E = self.elements
        return {"name": "finite-table", "label": self.name, "elements": list(E),
                "table": [[self._table[p, q] for q in E] for p in E],
                "weakly_cancellative": self.caps.weakly_cancellative,
                "total": self.caps.total}

    def add(self, p, q):
        try:
            return self._table[p, q]
        except KeyError:
            raise MonoidError(f"{p!r} or {q!r} is not an element of {self.name}") from None

    def contains(self, p):
        try:
            return p in self._index
        except TypeError:
            return False

    def _subtract(self, b, c):
        # first witness in enumeration order
        self.check(b), self.check(c)
        for a in self.elements:
            if self._table[b, a] == c:
                return a
        return None

    def _elements(self):
        return self.elements

    def parse(self, literal):
        if literal in self._index:
            return literal
        raise MonoidError(f"{literal!r} is not an element of {self.name}")

    def sort_key(self, p):
        return self._index[p]


# ---------------------------------------------------------------------------
# powers and free monoids


class Power(Monoid):
    """Finite-support power of ``base`` over string index keys.

    With ``index=None`` any key is admitted; otherwise keys must come from the
    given finite index set (and the power is finite when the base is).
    """

    element_type = PowerElement

    def __init__(self, base: Monoid, index: Iterable | None = None):
        self.base = base
        self.index = None if index is None else tuple(sorted({str(i) for i in index}))
        if self.index is not None and not self.index:
            raise MonoidError("power index set must be non-empty")
        self.zero = self.element_type((), zero=base.zero)
        idx = "*" if self.index is None else "{" + ",".join(self.index) + "}"
        self.name = f"{base.name}^{idx}"
        single = self.index is not None and len(self.index) == 1
        bc = base.caps
        self.caps = Capabilities(
            finite=bc.finite and self.index is not None,
            preorder=bc.preorder,
            weakly_cancellative=single and bc.weakly_cancellative,
            total=single and bc.total,
            power=True,
            bounded=bc.bounded or bc.finite,
        )

    def key(self):
        return ("Power", self.base.key(), self.index)

    def descriptor(self):
        d = {"name": "power", "base": self.base.descriptor()}
        if self.index is not None:
            d["index"] = list(self.index)
        return d

    def make(self, components: Mapping | Iterable) -> PowerElement:
        return self.element_type(components, zero=self.base.zero)

    def components(self, p) -> list[str]:
        return list(p.keys())

    def add(self, p, q):
        out = dict(p)
        for k, v in q.items():
            out[k] = self.base.add(out[k], v) if k in out else v
        return self.make(out)

    def contains(self, p):
        if not isinstance(p, self.element_type):
            return False
        if self.index is not None and any(k not in self.index for k in p):
            return False
        return all(self.base.contains(v) and not self.base.is_zero(v) for v in p.values())

    def _subtract(self, b, c):
        out = {}
        for k in set(b) | set(c):
            a = self.base.try_subtract(b.get(k, self.base.zero), c.get(k, self.base.zero))
            if a is None:
                return None
            out[k] = a
        return self.make(out)

    def _elements(self):
        vals = self.base.enumerate()
        for combo in itertools.product(vals, repeat=len(self.index)):
            yield self.make(zip(self.index, combo))

    def _below(self, c):
        keys = list(c.keys())
        per_key = [self.base.below(c[k]) for k in keys]
        for combo in itertools.product(*per_key):
            yield self.make(zip(keys, combo))

    def _below_finite(self, x, c):
        return all(self.base.below(c.get(k, self.base.zero)).count(x.get(k, self.base.zero))
                   for k in set(x) | set(c))

    def parse(self, literal):
        if not isinstance(literal, Mapping):
            raise MonoidError(f"power element literal must be an object, got {literal!r}")
        return self.check(self.make({str(k): self.base.parse(v) for k, v in literal.items()}))

    def to_literal(self, p):
        return {k: self.base.to_literal(v) for k, v in p.items()}

    def sort_key(self, p):
        return tuple((k, self.base.sort_key(v)) for k, v in p.items())


class Free(Power):
    """The free commutative monoid on generator names, realised as linear forms."""

    element_type = FreeElement

    def __init__(self, generators: Iterable[str] | None = None):
        super().__init__(Naturals(), generators)
        gens = "*" if self.index is None else ",".join(self.index)
        self.name = f"F({gens})"
        single = self.index is not None and len(self.index) == 1
        self.caps = Capabilities(preorder=True, weakly_cancellative=True, total=single,
                                 power=True, bounded=True)

    def key(self):
        return ("Free", self.index)

    def descriptor(self):
        d = {"name": "free"}
        if self.index is not None:
            d["generators"] = list(self.index)
        return d

    def generator(self, name: str) -> FreeElement:
        name = str(name)
        if self.index is not None and name not in self.index:
            raise MonoidError(f"{name!r} is not a generator of {self.name}")
        return self.make({name: 1})

    @property
    def generators(self):
        return self.index


# ---------------------------------------------------------------------------
# axioms


def axiom_violations(m: Monoid, samples: Iterable, exhaustive_triples: bool = True) -> list[str]:
    """Check monoid axioms on sample elements; returns human-readable violations."""
    S = list(samples)
    out = []
    z = m.zero
    for p in S:
        if m.add(z, p) != p or m.add(p, z) != p:
            out.append(f"zero is not neutral for {p!r}")
    for p, q in itertools.product(S, repeat=2):
        if m.add(p, q) != m.add(q, p):
            out.append(f"not commutative at ({p!r}, {q!r})")
        if m.add(p, q) == z and not (p == z and q == z):
            out.append(f"not positive: {p!r} + {q!r} = 0")
    if exhaustive_triples:
        for p, q, r in itertools.product(S, repeat=3):
            if m.add(m.add(p, q), r) != m.add(p, m.add(q, r)):
                out.append(f"not associative at ({p!r}, {q!r}, {r!r})")
    return out


# ---------------------------------------------------------------------------
# catalog

_M2_TABLE = [[0, 1, 2], [1, 2, 1], [2, 1, 2]]


def _truncated_powerset(k: int) -> FiniteTable:
    if isinstance(k, bool) or not isinstance(k, int) or k < 0:
        raise MonoidError(f"truncated powerset needs an integer k >= 0, got {k!r}")
    elems = list(range(k + 2))
    top = k + 1

    def plus(i, j):
        if i == 0:
            return j
        if j == 0:
            return i
        if i == j and i <= k:
            return i
        return top

    table = [[plus(i, j) for j in elems] for i in elems]
    return FiniteTable(elems, table, name=f"P_{k}", total=k <= 1, weakly_cancellative=k == 0)


CATALOG = ("B", "N", "N2", "M2", "Q", "R1", "V", "fuzzy", "P", "Pk",
           "truncated", "gap-rational", "finite-table", "free", "power")

_ALIASES = {"Q>=0": "Q", "Q≥0": "Q", "bool": "B", "Bool": "B", "R_1": "R1",
            "bounded-order": "V", "powerset": "P", "P_k": "Pk",
            "truncated-powerset": "Pk", "table": "finite-table"}


def make_builtin(name: str, params: Mapping | None = None) -> Monoid:
    """Build a catalog monoid by name.

    >>> make_builtin("N2").add(2, 1)
    2
    >>> make_builtin("M2").add(1, 2)
    1
    """
    params = dict(params or {})
    name = _ALIASES.get(name, name)
    if name == "B":
        return Boolean()
    if name == "N":
        return Naturals()
    if name == "N2":
        return Truncated(2, name="N2")
    if name == "truncated":
        return Truncated(params.get("cap", 2))
    if name == "M2":
        return FiniteTable([0, 1, 2], _M2_TABLE, name="M2", weakly_cancellative=True, total=True)
    if name == "Q":
        return Rationals()
    if name == "R1":
        return GapRationals(1)
    if name == "gap-rational":
        return GapRationals(params.get("threshold", 1))
    if name == "V":
        return BoundedOrder(params.get("max", 1))
    if name == "fuzzy":
        return Fuzzy()
    if name == "P":
        if "universe" not in params:
            raise MonoidError("powerset needs a 'universe' parameter")
        return Powerset(params["universe"])
    if name == "Pk":
        return _truncated_powerset(params.get("k", 3))
    if name == "finite-table":
        try:
            return FiniteTable(params["elements"], params["table"],
                               name=params.get("label", "table"),
                               weakly_cancellative=params.get("weakly_cancellative", False),
                               total=params.get("total", False))
        except KeyError as exc:
            raise MonoidError(f"finite-table needs parameter {exc}") from None
    if name == "free":
        return Free(params.get("generators"))
    if name == "power":
        base = params.get("base")
        if base is None:
            raise MonoidError("power needs a 'base' parameter")
        if not isinstance(base, Monoid):
            base = from_descriptor(base)
        return Power(base, params.get("index"))
    raise MonoidError(f"unknown monoid {name!r}; known: {', '.join(CATALOG)}")


def from_descriptor(desc: Mapping | str) -> Monoid:
    """Monoid from a JSON descriptor such as ``{"name": "power", "base": {"name": "B"}}``."""
    if isinstance(desc, str):
        return make_builtin(desc)
    if not isinstance(desc, Mapping) or "name" not in desc:
        raise MonoidError(f"monoid descriptor must be an object with a 'name', got {desc!r}")
    params = {k: v for k, v in desc.items() if k != "name"}
    return make_builtin(desc["name"], params)


def sums_of(m: Monoid, count: int) -> list[set]:
    """For a finite monoid, ``out[r]`` is the set of all sums of ``r`` elements."""
    elems = m.enumerate()
    out = [{m.zero}]
    for _ in range(count):
        out.append({m.add(s, e) for s in out[-1] for e in elems})
    return out


def transport_method(m: Monoid) -> str | None:
    """Name of the transportation solver this monoid's capabilities justify.

    ``None`` means nothing beyond brute force (finite) or nothing at all; the
    transportation property itself is never a declared flag.
    """
    c = m.caps
    if c.lattice:
        return "lattice"
    if c.northwest:
        return "northwest"
    if c.power and transport_method(m.base) is not None:
        return "componentwise"
    if c.semifield:
        return "semifield"
    return None


def has_transportation_guarantee(m: Monoid) -> bool:
    return transport_method(m) is not None


__all__ = [
    "Capabilities", "CapabilityError", "MonoidError", "Monoid", "FMap", "PowerElement",
    "FreeElement", "Naturals", "Truncated", "Boolean", "Rationals", "GapRationals",
    "BoundedOrder", "Fuzzy", "Powerset", "FiniteTable", "Power", "Free", "make_builtin",
    "from_descriptor", "axiom_violations", "sums_of", "transport_method",
    "has_transportation_guarantee", "CATALOG",
]
