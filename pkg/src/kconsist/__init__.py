"""Consistency of relations annotated over positive commutative monoids."""

__version__ = "0.1.0"

from .consistency import (ConsistencyVerdict, chase_acyclic, check_global, check_kwise,
                          check_pair, check_pairwise, generate_counterexample, transport_via_p3)
from .covers import (Cover, LiftedRelation, canonical_lift, chase_up_to_free_cover, free_cover,
                     generate_cover_counterexample, identity_cover, lift_global_witness,
                     push_down, truncation_cover)
from .hypergraph import Hypergraph, check_acyclic, induced, make_named, reduce
from .joins import (JoinMethod, componentwise_join, northwest_join, standard_join,
                    vorobev_join, witnessing_join)
from .monoids import Capabilities, FreeElement, Monoid, PowerElement, make_builtin
from .relations import KRelation, inner_consistent, marginal, support, verify_witness
from .transport import (TransportInstance, TransportSolution, is_balanced, solve,
                        solve_componentwise, solve_exhaustive, solve_northwest)

__all__ = [
    "ConsistencyVerdict",
    "chase_acyclic",
    "check_global",
    "check_kwise",
    "check_pair",
    "check_pairwise",
    "generate_counterexample",
    "transport_via_p3",
    "Cover",
    "LiftedRelation",
    "canonical_lift",
    "chase_up_to_free_cover",
    "free_cover",
    "generate_cover_counterexample",
    "identity_cover",
    "lift_global_witness",
    "push_down",
    "truncation_cover",
    "Hypergraph",
    "check_acyclic",
    "induced",
    "make_named",
    "reduce",
    "JoinMethod",
    "componentwise_join",
    "northwest_join",
    "standard_join",
    "vorobev_join",
    "witnessing_join",
    "Capabilities",
    "FreeElement",
    "Monoid",
    "PowerElement",
    "make_builtin",
    "KRelation",
    "inner_consistent",
    "marginal",
    "support",
    "verify_witness",
    "TransportInstance",
    "TransportSolution",
    "is_balanced",
    "solve",
    "solve_componentwise",
    "solve_exhaustive",
    "solve_northwest",
]
