import json
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from kconsist.generators import random_relation
from kconsist.io import (InstanceError, instance_to_json, load_instance, parse_element,
                         parse_instance, parse_monoid_arg, relation_from_json, relation_to_json)
from kconsist.monoids import MonoidError, make_builtin
from kconsist.relations import KRelation

N = make_builtin("N")


def small_instance(**extra):
    data = {"monoid": {"name": "N"}, "domains": {"A": ["a1", "a2"], "B": ["b"]},
            "relations": [{"name": "R", "attributes": ["A", "B"],
                           "tuples": [{"values": {"A": "a1", "B": "b"}, "annotation": 2}]}]}
    data.update(extra)
    return data


def test_parse_small_instance():
    inst = parse_instance(small_instance())
    R = inst.relation("R")
    assert R.as_dict() == {("a1", "b"): 2}
    assert R.domains["A"] == ("a1", "a2")
    assert inst.schema_or_relations().edges == (frozenset("AB"),)
    with pytest.raises(InstanceError):
        inst.relation("S")


def test_domains_are_inferred_when_absent():
    data = small_instance()
    del data["domains"]
    R = parse_instance(data).relation("R")
    assert R.domains["A"] == ("a1",)


@pytest.mark.parametrize("change", [
    {"domains": {"A": ["a1"]}},                       # no domain for B
    {"domains": {"A": ["a2"], "B": ["b"]}},            # value outside its domain
    {"domains": {"A": [], "B": ["b"]}},                # empty domain
    {"relations": [{"attributes": ["A", "B"], "tuples": [{"values": {"A": "a1"},
                                                          "annotation": 1}]}]},
    {"relations": [{"attributes": ["A"], "tuples": [{"values": {"A": [1]}, "annotation": 1}]}]},
    {"relations": [{"tuples": []}]},
    {"relations": [{"attributes": ["A"], "tuples": [{"values": {"A": "a1"}}]}]},
])
def test_malformed_instances(change):
    with pytest.raises(InstanceError):
        parse_instance(small_instance(**change))


def test_relations_and_transport_need_a_monoid():
    data = small_instance()
    del data["monoid"]
    with pytest.raises(InstanceError):
        parse_instance(data)
    with pytest.raises(InstanceError):
        parse_instance({"b": [1], "c": [1]})
    with pytest.raises(InstanceError):
        parse_instance({"monoid": "N", "b": [1]})
    with pytest.raises(InstanceError):
        parse_instance([1, 2])


def test_bad_annotation_is_a_monoid_error():
    data = small_instance(monoid={"name": "N2"})
    data["relations"][0]["tuples"][0]["annotation"] = 5
    with pytest.raises(MonoidError):
        parse_instance(data)


def test_zero_annotations_are_dropped():
    data = small_instance()
    data["relations"][0]["tuples"].append({"values": {"A": "a2", "B": "b"}, "annotation": 0})
    assert len(parse_instance(data).relation("R")) == 1


def test_transport_and_schema_sections():
    inst = parse_instance({"monoid": "N2", "b": [1, 1], "c": [2],
                           "schema": {"edges": [["A", "B"], ["B", "C"]]}})
    assert inst.transport.b == (1, 1) and inst.transport.c == (2,)
    assert sorted(inst.schema.vertices) == ["A", "B", "C"]
    with pytest.raises(InstanceError):
        parse_instance({"schema": {}})


def test_load_instance_reports_bad_json(tmp_path):
    p = tmp_path / "bad.json"
    p.write_text("{nope")
    with pytest.raises(InstanceError):
        load_instance(p)
    p.write_text(json.dumps(small_instance()))
    assert load_instance(p).path == str(p)


def test_lifts_live_over_the_upstairs_monoid(instance):
    inst = instance("path_n2_pair_lifts")
    assert len(inst.lifts) == len(inst.relations)
    assert all(L.monoid.caps.power for L in inst.lifts)


def test_parse_element_and_monoid_arg():
    Q = make_builtin("Q")
    assert parse_element(Q, "1/3") == Fraction(1, 3)
    assert parse_element(Q, "2") == 2
    F = make_builtin("free")
    assert dict(parse_element(F, '{"x": 2}')) == {"x": 2}
    assert parse_monoid_arg("N2") == make_builtin("N2")
    assert parse_monoid_arg(' {"name": "V", "max": 3}') == make_builtin("V", {"max": 3})
    with pytest.raises(MonoidError):
        parse_monoid_arg("{bad")
    with pytest.raises(MonoidError):
        parse_monoid_arg("nope")


def test_instance_to_json_round_trip():
    R = KRelation(N, "AB", {("a", "b"): 3}, name="R", domains={"A": ["a", "z"], "B": ["b"]})
    data = instance_to_json(N, [R], tag="x")
    assert data["tag"] == "x"
    back = parse_instance(json.loads(json.dumps(data)))
    assert back.relation("R") == R
    assert back.domains["A"] == ["a", "z"]


MONOIDS = ["N", "N2", "Q", "B", "fuzzy", "free", ("P", {"universe": ["x", "y"]})]


@settings(max_examples=60)
@given(st.sampled_from(MONOIDS), st.integers(0, 10**9))
def test_relation_json_round_trip(entry, seed):
    m = make_builtin(*entry) if isinstance(entry, tuple) else make_builtin(entry)
    rng = random.Random(seed)
    R = random_relation(m, ["A", "B"], 3, rng.randint(0, 6), rng)
    text = json.dumps(relation_to_json(R))
    assert relation_from_json(json.loads(text), m) == R
