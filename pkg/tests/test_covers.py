import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from kconsist.consistency import check_global, check_pair, check_pairwise, generate_counterexample
from kconsist.covers import (CoverError, canonical_lift, chase_up_to_free_cover,
                             find_pairwise_consistent_lifts, finite_map_cover, free_cover,
                             generate_cover_counterexample, identity_cover, lift_global_witness,
                             make_cover, push_down, truncation_cover)
from kconsist.generators import random_acyclic_schema, random_consistent_collection
from kconsist.hypergraph import make_named
from kconsist.io import relation_from_json
from kconsist.monoids import Free, make_builtin
from kconsist.relations import KRelation, verify_witness

N = make_builtin("N")
N2 = make_builtin("N2")


def test_free_cover_evaluates_linear_forms():
    cv = free_cover(N2)
    x1 = cv.preimage(1)
    assert isinstance(cv.upstairs, Free)
    assert cv(cv.upstairs.times(2, x1)) == 2
    assert cv(cv.upstairs.zero) == 0
    assert dict(x1) == {"1": 1}
    assert cv.homomorphism_violations([x1, cv.preimage(2), cv.upstairs.zero]) == []


def test_canonical_lift_names_generators_after_values(instance):
    R2 = instance("path_n2").relation("R2")
    R3 = instance("path_n2").relation("R3")
    cv = free_cover(N2)
    L2, L3 = canonical_lift(R2, cv), canonical_lift(R3, cv)
    assert {str(v) for _, v in L2.lifted.items()} == {"[2]"}
    assert {str(v) for _, v in L3.lifted.items()} == {"[1]", "[2]"}
    assert push_down(L2.lifted, cv) == R2
    # direct lifts are not inner consistent on C: y versus 3x
    assert not check_pair(L2.lifted, L3.lifted).consistent
    empty = KRelation(N2, "AB")
    assert len(canonical_lift(empty, cv).lifted) == 0


def test_lifting_a_pair_witness(fixture_json, instance):
    inst = instance("path_n2")
    R2, R3 = inst.relation("R2"), inst.relation("R3")
    W = relation_from_json(fixture_json("path_n2")["reference_witnesses"]["R2,R3"],
                           inst.monoid, inst.domains)
    cv = free_cover(N2)
    lifts, W_star = lift_global_witness(W, [R2, R3], cv)
    assert all(L.check() for L in lifts)
    assert check_pair(lifts[0].lifted, lifts[1].lifted).consistent
    assert verify_witness(push_down(W_star, cv), [R2, R3])
    assert verify_witness(chase_up_to_free_cover(lifts), [R2, R3])


def test_lift_global_witness_rejects_non_witnesses(instance):
    R1 = instance("path_n2").relation("R1")
    wrong = R1.map_annotations(lambda v: 1, N2)
    with pytest.raises(CoverError):
        lift_global_witness(wrong, [R1], free_cover(N2))


def test_identity_cover_is_transparent():
    cv = identity_cover(N)
    W = KRelation(N, "AB", {("a", "b"): 2, ("a", "c"): 1})
    assert push_down(W, cv) == W
    lifts, W_star = lift_global_witness(W, [W.marginal("A"), W.marginal("B")], cv)
    assert W_star == W
    assert [L.lifted for L in lifts] == [W.marginal("A"), W.marginal("B")]


def test_push_down_commutes_with_marginals():
    cv = truncation_cover()
    W = KRelation(N, "AB", {("a", "b"): 5, ("a", "c"): 1, ("d", "c"): 1})
    for Y in ["A", "B", "", "AB"]:
        assert push_down(W.marginal(Y), cv) == push_down(W, cv).marginal(Y)


def test_truncation_cover():
    cv = truncation_cover()
    assert cv.downstairs == N2
    assert [cv(n) for n in range(5)] == [0, 1, 2, 2, 2]
    assert cv.homomorphism_violations(range(6)) == []


def test_finite_map_covers():
    m2, b = make_builtin("M2"), make_builtin("B")
    cv = finite_map_cover(m2, b, {0: 0, 1: 1, 2: 1})
    assert cv(2) == 1 and cv.preimage(1) == 1
    with pytest.raises(CoverError):
        finite_map_cover(N2, m2, {0: 0, 1: 1, 2: 2})
    with pytest.raises(CoverError):
        finite_map_cover(N2, make_builtin("truncated", {"cap": 3}), {0: 0, 1: 1, 2: 2})
    desc = cv.descriptor()
    assert make_cover(desc, b).map(1) == 1


def test_make_cover_kinds():
    assert make_cover("free", N2).kind == "free"
    assert make_cover({"kind": "identity"}, N2).kind == "identity"
    assert make_cover({"kind": "truncation"}, N2).upstairs == N
    with pytest.raises(CoverError):
        make_cover({"kind": "truncation"}, N)
    with pytest.raises(CoverError):
        make_cover({"kind": "nope"}, N)


def test_cover_counterexample_on_a_triangle():
    cv = free_cover(N2)
    out = generate_cover_counterexample(make_named("C", 3), N2, 1, cv)
    a_star = out.upstairs.a
    assert dict(a_star) == {"1": 4}
    ups = [L.lifted for L in out.lifts]
    assert check_pairwise(ups).consistent
    assert check_global(out.base.relations).outcome == "inconsistent"
    assert all(L.check() for L in out.lifts)


def test_identity_cover_counterexample_is_the_plain_one():
    H = make_named("C", 4)
    out = generate_cover_counterexample(H, N, 1, identity_cover(N))
    assert [L.lifted for L in out.lifts] == generate_counterexample(H, N, 1).relations


def test_cover_counterexample_checks_the_preimage():
    with pytest.raises(CoverError):
        generate_cover_counterexample(make_named("C", 3), N2, 1, truncation_cover(), c_star=2)


def test_bounded_lift_search(instance):
    rels = instance("path_n2").relations
    result = find_pairwise_consistent_lifts(rels, truncation_cover(), range(5))
    assert not result.found and result.combinations == 81
    # dropping R1 leaves a pair that does lift
    result = find_pairwise_consistent_lifts(rels[1:], truncation_cover(), range(5))
    assert result.found
    L2, L3 = (L.lifted for L in result.lifts)
    assert check_pair(L2, L3).consistent


def test_bounded_lift_search_over_an_exhaustive_oracle(instance):
    rels = instance("path_n2").relations[1:]
    cv = truncation_cover()
    found = 0
    for a in itertools.product([2, 3, 4], repeat=2):
        for b in itertools.product([2, 3, 4], repeat=1):
            L2 = KRelation(N, "BC", {("b1", "c1"): a[0], ("b2", "c2"): a[1]})
            L3 = KRelation(N, "CD", {("c1", "d1"): 1, ("c1", "d2"): 1, ("c1", "d3"): 1,
                                     ("c2", "d4"): b[0]})
            found += check_pair(L2, L3).consistent
    # c1 forces a[0] = 3 and c2 forces a[1] = b[0]
    assert found == 3
    assert find_pairwise_consistent_lifts(rels, cv, range(5)).found


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**9))
def test_absoluteness_round_trip(seed):
    rng = random.Random(seed)
    m = rng.choice([N2, make_builtin("M2"), make_builtin("B")])
    edges = random_acyclic_schema(rng, max_edges=3)
    W, rels = random_consistent_collection(m, edges, rng, max_support=6)
    cv = free_cover(m)
    lifts, W_star = lift_global_witness(W, rels, cv)
    assert verify_witness(W_star, [L.lifted for L in lifts])
    assert verify_witness(push_down(W_star, cv), rels)
    assert verify_witness(chase_up_to_free_cover(lifts), rels)
