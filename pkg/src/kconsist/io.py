"""JSON instance files: monoids, domains, relations, schemas, transport data and lifts.

An instance file looks like::

    {
      "monoid": {"name": "N2"},
      "domains": {"A": ["a1", "a2"], "B": ["b1"]},
      "relations": [
        {"name": "R", "attributes": ["A", "B"],
         "tuples": [{"values": {"A": "a1", "B": "b1"}, "annotation": 1}]}
      ],
      "schema": {"vertices": ["A", "B"], "edges": [["A", "B"]]},
      "b": [1, 1], "c": [2]
    }

Every key except ``monoid`` is optional; commands pick what they need.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Mapping

from .hypergraph import Hypergraph
from .monoids import Monoid, MonoidError, from_descriptor
from .relations import KRelation, RelationError
from .transport import TransportInstance


class InstanceError(ValueError):
    """Malformed instance file."""


@dataclass
class Instance:
    monoid: Monoid | None
    domains: dict = field(default_factory=dict)
    relations: list = field(default_factory=list)
    schema: Hypergraph | None = None
    transport: TransportInstance | None = None
    cover: dict | None = None
    lifts: list = field(default_factory=list)
    raw: dict = field(default_factory=dict)
    path: str | None = None

    def relation(self, name: str) -> KRelation:
        for R in self.relations:
            if R.name == name:
                return R
        raise InstanceError(f"no relation named {name!r}")

    def schema_or_relations(self) -> Hypergraph:
        if self.schema is not None:
            return self.schema
        if self.relations:
            return Hypergraph.from_edges([R.attrs for R in self.relations])
        raise InstanceError("instance has neither a schema nor relations")


def _value(v):
    # domain values are JSON scalars; lists are not hashable
    if isinstance(v, (list, dict)):
        raise InstanceError(f"domain values must be strings or numbers, got {v!r}")
    return v


def relation_from_json(obj: Mapping, monoid: Monoid, domains: Mapping | None = None) -> KRelation:
    try:
        attrs = [str(a) for a in obj["attributes"]]
        rows = obj.get("tuples", [])
    except (KeyError, TypeError) as exc:
        raise InstanceError(f"relation needs 'attributes' and 'tuples': {exc}") from None
    items = []
    for row in rows:
        if not isinstance(row, Mapping) or "values" not in row or "annotation" not in row:
            raise InstanceError(f"tuple entry needs 'values' and 'annotation': {row!r}")
        vals = {str(a): _value(v) for a, v in row["values"].items()}
        if set(vals) != set(attrs):
            raise InstanceError(f"tuple {vals} does not match attributes {attrs}")
        items.append((vals, monoid.parse(row["annotation"])))
    doms = None
    if domains:
        missing = [a for a in attrs if a not in domains]
        if missing:
            raise InstanceError(f"no domain declared for {missing}")
        doms = {a: domains[a] for a in attrs}
    try:
        return KRelation(monoid, attrs, items, domains=doms, name=obj.get("name"))
    except RelationError as exc:
        raise InstanceError(str(exc)) from None


def relation_to_json(R: KRelation) -> dict:
    m = R.monoid
    return {"name": R.name, "attributes": list(R.attrs),
            "tuples": [{"values": dict(zip(R.attrs, t)), "annotation": m.to_literal(v)}
                       for t, v in R.items()]}


def schema_from_json(obj: Mapping) -> Hypergraph:
    try:
        edges = obj["edges"]
    except (KeyError, TypeError):
        raise InstanceError("schema needs 'edges'") from None
    verts = obj.get("vertices")
    if verts is None:
        return Hypergraph.from_edges(edges)
    return Hypergraph(verts, edges)


def transport_to_json(inst: TransportInstance) -> dict:
    m = inst.monoid
    return {"monoid": m.descriptor(), "b": [m.to_literal(x) for x in inst.b],
            "c": [m.to_literal(x) for x in inst.c]}


def parse_instance(data: Mapping, path: str | None = None) -> Instance:
    if not isinstance(data, Mapping):
        raise InstanceError("instance file must hold a JSON object")
    monoid = from_descriptor(data["monoid"]) if "monoid" in data else None
    domains = {str(a): [_value(v) for v in vs] for a, vs in data.get("domains", {}).items()}
    for a, vs in domains.items():
        if not vs:
            raise InstanceError(f"domain of {a!r} is empty")
    rels = []
    if data.get("relations"):
        if monoid is None:
            raise InstanceError("relations need a 'monoid'")
        rels = [relation_from_json(r, monoid, domains) for r in data["relations"]]
    schema = schema_from_json(data["schema"]) if "schema" in data else None
    transport = None
    if "b" in data or "c" in data:
        if monoid is None:
            raise InstanceError("transport data needs a 'monoid'")
        try:
            transport = TransportInstance(monoid, [monoid.parse(x) for x in data["b"]],
                                          [monoid.parse(x) for x in data["c"]])
        except KeyError as exc:
            raise InstanceError(f"transport instance is missing {exc}") from None
    lifts = []
    cover = data.get("cover")
    if data.get("lifts"):
        up_desc = data.get("upstairs", {"name": "free"})
        up = from_descriptor(up_desc)
        lifts = [relation_from_json(r, up, domains) for r in data["lifts"]]
    return Instance(monoid, domains, rels, schema, transport, cover, lifts, dict(data), path)


def load_instance(path: str | Path) -> Instance:
    p = Path(path)
    try:
        data = json.loads(p.read_text())
    except json.JSONDecodeError as exc:
        raise InstanceError(f"{p}: not valid JSON ({exc})") from None
    return parse_instance(data, str(p))


def instance_to_json(monoid: Monoid, relations, domains: Mapping | None = None,
                     **extra: Any) -> dict:
    doms: dict = {}
    for R in relations:
        for a in R.attrs:
            doms.setdefault(a, list(R.domains[a]))
    if domains:
        doms.update({a: list(v) for a, v in domains.items()})
    out = {"monoid": monoid.descriptor(), "domains": doms,
           "relations": [relation_to_json(R) for R in relations]}
    out.update(extra)
    return out


def parse_element(m: Monoid, text: str):
    """Element from a command-line literal: JSON if it parses, else the raw string."""
    try:
        lit = json.loads(text)
    except json.JSONDecodeError:
        lit = text
    return m.parse(lit)


def parse_monoid_arg(text: str) -> Monoid:
    """``N2``, ``Q``, or a JSON descriptor such as ``{"name": "V", "max": 3}``."""
    text = text.strip()
    if text.startswith("{"):
        try:
            return from_descriptor(json.loads(text))
        except json.JSONDecodeError as exc:
            raise MonoidError(f"bad monoid descriptor: {exc}") from None
    return from_descriptor(text)


__all__ = [
    "Instance", "InstanceError", "parse_instance", "load_instance", "relation_from_json",
    "relation_to_json", "schema_from_json", "transport_to_json", "instance_to_json",
    "parse_element", "parse_monoid_arg",
]
