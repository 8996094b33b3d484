import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from kconsist.generators import random_inner_consistent_pair
from kconsist.joins import (BlockInfeasible, JoinMethod, NotInnerConsistent, componentwise_join,
                            exhaustive_join, join, northwest_join, sparsity, standard_join,
                            vorobev_join, witnessing_join, witnessing_join_method)
from kconsist.monoids import CapabilityError, Power, make_builtin
from kconsist.relations import KRelation, verify_witness
from kconsist.transport import Undecidable

N = make_builtin("N")


def test_standard_join_fails_over_naturals(instance):
    inst = instance("n_standard")
    R, S = inst.relation("R"), inst.relation("S")
    W = standard_join(R, S)
    assert W.as_dict() == {(1, 2, 1): 1, (1, 2, 2): 1, (2, 2, 1): 1, (2, 2, 2): 1}
    assert not verify_witness(W, [R, S])
    W2 = northwest_join(R, S)
    assert verify_witness(W2, [R, S])
    assert sparsity(W2, R, S) == (2, 4)


def test_standard_join_over_fuzzy():
    F = make_builtin("fuzzy")
    R = KRelation(F, "AB", {("a", "b"): Fraction(1, 2)})
    S = KRelation(F, "BC", {("b", "c"): Fraction(1, 4)})
    assert standard_join(R, S).as_dict() == {("a", "b", "c"): Fraction(1, 4)}


def test_standard_join_needs_multiplication():
    R = KRelation(make_builtin("N2"), "A", {("a",): 1})
    with pytest.raises(CapabilityError):
        standard_join(R, R)


def test_vorobev_example(instance):
    inst = instance("q_vorobev")
    R, S = inst.relation("R"), inst.relation("S")
    W = vorobev_join(R, S)
    e, t = Fraction(1, 8), Fraction(3, 8)
    assert W.as_dict() == {("a1", "b", "c1"): e, ("a1", "b", "c2"): t,
                           ("a2", "b", "c1"): e, ("a2", "b", "c2"): t}
    assert verify_witness(W, [R, S])


def test_vorobev_identical_single_tuples():
    Q = make_builtin("Q")
    R = KRelation(Q, "AB", {("a", "b"): Fraction(2, 3)})
    assert vorobev_join(R, R) == R


def test_vorobev_rejects_inner_inconsistent_pairs():
    Q = make_builtin("Q")
    R = KRelation(Q, "AB", {("a", "b"): Fraction(1)})
    S = KRelation(Q, "BC", {("b", "c"): Fraction(2)})
    with pytest.raises(NotInnerConsistent):
        vorobev_join(R, S)


def test_northwest_join_example():
    R = KRelation(N, "AB", {("a1", "b"): 3, ("a2", "b"): 2})
    S = KRelation(N, "BC", {("b", "c1"): 1, ("b", "c2"): 4})
    W = northwest_join(R, S)
    assert W.as_dict() == {("a1", "b", "c1"): 1, ("a1", "b", "c2"): 2, ("a2", "b", "c2"): 2}
    one = KRelation(N, "AB", {("a", "b"): 5})
    assert len(northwest_join(one, KRelation(N, "BC", {("b", "c"): 5}))) == 1


def test_exhaustive_join_reports_the_failing_block(instance):
    R, S = instance("n2_inner").relations
    with pytest.raises(BlockInfeasible) as info:
        exhaustive_join(R, S)
    assert info.value.block == {"C": "c"}
    assert info.value.instance.b == (1, 1)
    assert info.value.instance.c == (1, 2)


def test_componentwise_join_over_free():
    F = make_builtin("free", {"generators": ["x", "y"]})
    x, y = F.generator("x"), F.generator("y")
    R = KRelation(F, "AB", {("a1", "b"): F.add(x, y), ("a2", "b"): x})
    S = KRelation(F, "BC", {("b", "c1"): x, ("b", "c2"): F.add(x, y)})
    W = componentwise_join(R, S)
    assert verify_witness(W, [R, S])
    assert W.as_dict() == {("a1", "b", "c1"): x, ("a1", "b", "c2"): y, ("a2", "b", "c2"): x}


def test_componentwise_single_component_matches_base_join():
    P = Power(N, ["i"])
    R = KRelation(N, "AB", {("a1", "b"): 3, ("a2", "b"): 2})
    S = KRelation(N, "BC", {("b", "c1"): 1, ("b", "c2"): 4})
    lift = lambda T: T.map_annotations(lambda v: P.make({"i": v}), P)  # noqa: E731
    W = componentwise_join(lift(R), lift(S))
    assert W == lift(northwest_join(R, S))


def test_componentwise_disjoint_keys_with_zero_common_marginal():
    P = Power(N)
    R = KRelation(P, "A", {("a",): P.make({"i": 1})})
    S = KRelation(P, "B", {("b",): P.make({"i": 1})})
    W = componentwise_join(R, S)
    assert verify_witness(W, [R, S])
    assert W.as_dict() == {("a", "b"): P.make({"i": 1})}


def test_witnessing_join_method_order():
    assert witnessing_join_method(make_builtin("B")) is JoinMethod.STANDARD
    assert witnessing_join_method(N) is JoinMethod.NORTHWEST
    assert witnessing_join_method(make_builtin("Q")) is JoinMethod.NORTHWEST
    assert witnessing_join_method(make_builtin("free")) is JoinMethod.COMPONENTWISE
    assert witnessing_join_method(make_builtin("N2")) is None


def test_witnessing_join_falls_back_to_search():
    N2 = make_builtin("N2")
    R = KRelation(N2, "AB", {("a", "b"): 2})
    W, method = witnessing_join(R, KRelation(N2, "BC", {("b", "c"): 1, ("b", "d"): 1}))
    assert method is JoinMethod.EXHAUSTIVE and len(W) == 2
    with pytest.raises(Undecidable):
        R1 = make_builtin("R1")
        T = KRelation(R1, "A", {("a",): Fraction(1)})
        witnessing_join(T, T)


def test_join_by_name():
    R = KRelation(N, "A", {("a",): 2})
    assert join(R, R, "northwest") == R


LATTICES = [make_builtin("B"), make_builtin("fuzzy"), make_builtin("P", {"universe": ["p", "q"]})]


@settings(max_examples=80)
@given(st.integers(0, 10**9))
def test_northwest_witness_and_sparsity(seed):
    R, S = random_inner_consistent_pair(N, random.Random(seed))
    W = northwest_join(R, S)
    assert verify_witness(W, [R, S])
    size, bound = sparsity(W, R, S)
    assert size <= bound


@settings(max_examples=80)
@given(st.integers(0, 10**9), st.sampled_from(LATTICES))
def test_standard_join_witnesses_on_lattices(seed, m):
    R, S = random_inner_consistent_pair(m, random.Random(seed))
    assert verify_witness(standard_join(R, S), [R, S])


@settings(max_examples=60)
@given(st.integers(0, 10**9))
def test_componentwise_witness_and_sparsity(seed):
    rng = random.Random(seed)
    F = make_builtin("free", {"generators": ["x", "y", "z"]})
    R, S = random_inner_consistent_pair(F, rng, max_support=6)
    W = componentwise_join(R, S)
    assert verify_witness(W, [R, S])
    keys = {k for _, v in list(R.items()) + list(S.items()) for k in v}
    assert len(W) <= len(keys) * (len(R) + len(S))


@settings(max_examples=40)
@given(st.integers(0, 10**9))
def test_m2_northwest_witnesses(seed):
    R, S = random_inner_consistent_pair(make_builtin("M2"), random.Random(seed), max_support=6)
    if R.marginal(sorted(R.attr_set() & S.attr_set())) == S.marginal(sorted(R.attr_set() & S.attr_set())):
        assert verify_witness(northwest_join(R, S), [R, S])
