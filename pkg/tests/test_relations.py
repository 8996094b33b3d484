import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from kconsist.generators import random_relation
from kconsist.monoids import MonoidError, make_builtin
from kconsist.relations import (KRelation, RelationError, inner_consistent, marginal,
                                merged_domains, project, support, tuple_space, verify_witness)

N = make_builtin("N")
N2 = make_builtin("N2")


def test_attributes_are_sorted_and_tuples_aligned():
    R = KRelation(N, ["B", "A"], {("b1", "a1"): 3})
    assert R.attrs == ("A", "B")
    assert R[("a1", "b1")] == 3
    assert R[{"A": "a1", "B": "b1"}] == 3
    assert R[("a2", "b1")] == 0


def test_zero_annotations_are_dropped():
    R = KRelation(N, "AB", {("a", "b"): 0, ("a", "c"): 2})
    assert len(R) == 1
    assert R.support() == {("a", "c")}


def test_construction_errors():
    with pytest.raises(RelationError):
        KRelation(N, ["A", "A"])
    with pytest.raises(RelationError):
        KRelation(N, "AB", {("a",): 1})
    with pytest.raises(MonoidError):
        KRelation(N2, "A", {("a",): 3})
    with pytest.raises(RelationError):
        KRelation(N, "A", {("z",): 1}, domains={"A": ["a"]})
    with pytest.raises(RelationError):
        KRelation(N, "A", [(("a",), 1), (("a",), 2)])


def test_tuple_order_follows_domains():
    R = KRelation(N, "A", {("z",): 1, ("a",): 1, ("m",): 1}, domains={"A": ["z", "m", "a"]})
    assert R.tuples() == [("z",), ("m",), ("a",)]


def test_marginal_examples(instance):
    R3 = instance("path_n2").relation("R3")
    assert R3.marginal("C").as_dict() == {("c1",): 2, ("c2",): 2}
    R = KRelation(N, "AB", {("a1", "b"): 3, ("a2", "b"): 2})
    assert R.marginal("B").as_dict() == {("b",): 5}
    assert marginal(R, R.attrs) == R
    assert R.marginal([]).as_dict() == {(): 5}
    assert R.total() == 5


def test_support_example(instance):
    R1 = instance("path_n2").relation("R1")
    assert support(R1) == {("a1", "b1"), ("a2", "b1"), ("a3", "b2")}
    assert support(KRelation(N, "A")) == frozenset()


def test_inner_consistency_examples(instance):
    inst = instance("n2_inner_system")
    R, S = inst.relations
    ok, RZ, SZ = inner_consistent(R, S)
    assert ok and RZ.as_dict() == {("c",): 2}
    # disjoint attributes compare totals
    A = KRelation(N, "A", {("a",): 3})
    B = KRelation(N, "B", {("b",): 1, ("c",): 2})
    assert inner_consistent(A, B)[0]
    assert not inner_consistent(A, KRelation(N, "B", {("b",): 1}))[0]


def test_inner_consistency_of_direct_free_lifts(instance):
    # the generator named after each annotation breaks inner consistency
    F = make_builtin("free")
    x, y = F.generator("1"), F.generator("2")
    R2 = instance("path_n2").relation("R2").map_annotations(lambda v: x if v == 1 else y, F)
    R3 = instance("path_n2").relation("R3").map_annotations(lambda v: x if v == 1 else y, F)
    ok, RZ, SZ = inner_consistent(R2, R3)
    assert not ok
    assert RZ[("c1",)] == y
    assert SZ[("c1",)] == F.times(3, x)


def test_verify_witness():
    R = KRelation(N, "AB", {("a", "b"): 2})
    assert verify_witness(R, [R])
    assert verify_witness(R, [R.marginal("A"), R.marginal("B")])
    with pytest.raises(RelationError):
        verify_witness(R, [KRelation(N, "C", {("c",): 2})])


def test_project_and_tuple_space():
    assert project([("a", "b"), ("a", "c")], ["A", "B"], ["A"]) == {("a",)}
    assert list(tuple_space(["A", "B"], {"A": [0, 1], "B": ["x"]})) == [(0, "x"), (1, "x")]


def test_merged_domains_keep_first_seen_order():
    R = KRelation(N, "A", {("b",): 1}, domains={"A": ["b", "a"]})
    S = KRelation(N, "A", {("c",): 1}, domains={"A": ["c", "a"]})
    assert merged_domains([R, S]) == {"A": ("b", "a", "c")}


def test_equality_ignores_names_and_domains():
    R = KRelation(N, "A", {("a",): 1}, name="R")
    assert R == KRelation(N, "A", {("a",): 1}, domains={"A": ["a", "b"]})
    assert R != KRelation(N2, "A", {("a",): 1})
    assert hash(R) == hash(R.renamed("S"))


def test_describe_lists_support():
    R = KRelation(N, "AB", {("a", "b"): 2}, name="R")
    assert R.describe() == "R(A B) over N\n  a b : 2"


# marginal laws on random relations

MONOIDS = [make_builtin(n) for n in ["B", "N", "N2", "M2", "Q", "fuzzy"]] + [
    make_builtin("P", {"universe": ["x", "y"]}), make_builtin("free", {"generators": ["g"]})]


@settings(max_examples=150)
@given(st.integers(0, 10**9), st.sampled_from(MONOIDS))
def test_marginal_laws(seed, m):
    rng = random.Random(seed)
    attrs = sorted(rng.sample("ABCD", rng.randint(1, 4)))
    R = random_relation(m, attrs, 2, rng.randint(0, 8), rng)
    Y = rng.sample(attrs, rng.randint(0, len(attrs)))
    Z = rng.sample(Y, rng.randint(0, len(Y)))
    RY = R.marginal(Y)
    assert RY.support() == project(R.support(), R.attrs, Y)
    assert RY.marginal(Z) == R.marginal(Z)
    if R:
        # positivity: the empty marginal of a nonempty relation is nonzero
        assert not m.is_zero(R.total())
    # a witness is always inner consistent with respect to its marginals
    X2 = rng.sample(attrs, rng.randint(0, len(attrs)))
    assert inner_consistent(R.marginal(Y), R.marginal(X2))[0]
