"""Regenerate the bundled JSON fixtures."""

import json
from pathlib import Path

OUT = Path(__file__).resolve().parents[1] / "src" / "kconsist" / "fixtures"


def rel(name, attrs, rows):
    return {"name": name, "attributes": list(attrs),
            "tuples": [{"values": dict(zip(attrs, t)), "annotation": v} for t, v in rows]}


def dump(name, obj):
    (OUT / f"{name}.json").write_text(json.dumps(obj, indent=2) + "\n")


def main():
    OUT.mkdir(exist_ok=True)
    path_domains = {"A": ["a1", "a2", "a3"], "B": ["b1", "b2"], "C": ["c1", "c2"],
                      "D": ["d1", "d2", "d3", "d4"]}
    R1 = rel("R1", "AB", [(("a1", "b1"), 1), (("a2", "b1"), 1), (("a3", "b2"), 2)])
    R2 = rel("R2", "BC", [(("b1", "c1"), 2), (("b2", "c2"), 2)])
    R3 = rel("R3", "CD", [(("c1", "d1"), 1), (("c1", "d2"), 1), (("c1", "d3"), 1),
                          (("c2", "d4"), 2)])
    dump("path_n2", {
        "description": "Three N2-relations on a path that are pairwise but not globally consistent.",
        "tags": ["reference", "path-n2", "covers"],
        "monoid": {"name": "N2"},
        "domains": path_domains,
        "relations": [R1, R2, R3],
        "reference_witnesses": {
            "R1,R2": rel("R12", "ABC", [(("a1", "b1", "c1"), 1), (("a2", "b1", "c1"), 1),
                                       (("a3", "b2", "c2"), 2)]),
            "R2,R3": rel("R23", "BCD", [(("b1", "c1", "d1"), 1), (("b1", "c1", "d2"), 1),
                                       (("b1", "c1", "d3"), 1), (("b2", "c2", "d4"), 2)]),
            "R1,R3": rel("R13", "ABCD", [(("a1", "b1", "c1", "d1"), 1),
                                        (("a2", "b1", "c1", "d2"), 1),
                                        (("a3", "b2", "c1", "d3"), 1),
                                        (("a3", "b2", "c2", "d4"), 2)]),
        },
        "expect": [
            {"argv": ["check-pairwise"], "report": {"outcome": "consistent"}},
            {"argv": ["check-global"], "report": {"outcome": "inconsistent",
                                                  "reason": "exhaustive-exhausted",
                                                  "search.0,1,2.candidates": 7}},
            {"argv": ["check-acyclic"], "report": {"verdict": "acyclic"}},
            {"argv": ["lift-search", "--cover", "truncation", "--bound", "4"],
             "report": {"found": False, "combinations": 81}},
        ],
    })
    dump("path_n2_pair_lifts", {
        "description": "R2 and R3 of the path example with lifts taken from a lifted pair witness.",
        "tags": ["reference", "covers"],
        "monoid": {"name": "N2"},
        "domains": {k: path_domains[k] for k in "BCD"},
        "relations": [R2, R3],
        "cover": {"kind": "free"},
        "upstairs": {"name": "free"},
        "lifts": [
            rel("R2", "BC", [(("b1", "c1"), {"1": 3}), (("b2", "c2"), {"2": 1})]),
            rel("R3", "CD", [(("c1", "d1"), {"1": 1}), (("c1", "d2"), {"1": 1}),
                             (("c1", "d3"), {"1": 1}), (("c2", "d4"), {"2": 1})]),
        ],
        "expect": [
            {"argv": ["chase-free-cover"], "report": {"outcome": "consistent", "verified": True}},
            {"argv": ["lift", "--cover", "free"], "report": {"strategy": "global-witness"}},
        ],
    })
    dump("n2_inner", {
        "description": "Inner consistent N2-relations (shared marginal c -> 2) that are not consistent.",
        "tags": ["reference", "non-example"],
        "monoid": {"name": "N2"},
        "domains": {"A": ["a1", "a2"], "B": ["b1", "b2"], "C": ["c"]},
        "relations": [
            rel("R", "AC", [(("a1", "c"), 1), (("a2", "c"), 1)]),
            rel("S", "BC", [(("b1", "c"), 1), (("b2", "c"), 2)]),
        ],
        "expect": [
            {"argv": ["check-pairwise"], "report": {"outcome": "inconsistent",
                                                    "reason": "transport-infeasible",
                                                    "block": {"C": "c"}}},
        ],
    })
    dump("n2_inner_system", {
        "description": "Three rows of 1 against two columns of 2 over N2, as relations.",
        "tags": ["reference", "non-example"],
        "monoid": {"name": "N2"},
        "domains": {"A": ["a1", "a2", "a3"], "B": ["b1", "b2"], "C": ["c"]},
        "relations": [
            rel("R", "AC", [(("a1", "c"), 1), (("a2", "c"), 1), (("a3", "c"), 1)]),
            rel("S", "BC", [(("b1", "c"), 2), (("b2", "c"), 2)]),
        ],
        "expect": [
            {"argv": ["check-pairwise"], "report": {"outcome": "inconsistent",
                                                    "reason": "transport-infeasible"}},
        ],
    })
    dump("n2_transport", {
        "description": "Balanced N2 instance with no solution.",
        "tags": ["reference", "non-example"],
        "monoid": {"name": "N2"}, "b": [1, 1, 1], "c": [2, 2],
        "expect": [
            {"argv": ["solve-transport"], "report": {"verdict": "infeasible", "method": "exhaustive"}},
            {"argv": ["solve-transport", "--method", "p3"], "report": {"verdict": "infeasible"}},
        ],
    })
    dump("pk3_transport", {
        "description": "Balanced instance over the truncated powerset monoid P_3 with no solution.",
        "tags": ["reference", "non-example"],
        "monoid": {"name": "Pk", "k": 3}, "b": [1, 3], "c": [2, 3],
        "domains": {"A": ["a1", "a2"], "B": ["b1", "b2"], "C": ["c"]},
        "relations": [
            rel("R", "AC", [(("a1", "c"), 1), (("a2", "c"), 3)]),
            rel("S", "BC", [(("b1", "c"), 2), (("b2", "c"), 3)]),
        ],
        "expect": [
            {"argv": ["solve-transport"], "report": {"verdict": "infeasible"}},
            {"argv": ["check-pairwise"], "report": {"outcome": "inconsistent",
                                                    "reason": "transport-infeasible"}},
        ],
    })
    dump("r1_gap", {
        "description": ("Rationals in {0} and [1, oo): three rows of 1 against two columns of 3/2. "
                        "Infeasible by hand (every nonzero cell is at least 1), but no decision "
                        "procedure applies here, so the verdict is undecidable-here."),
        "tags": ["reference", "non-example"],
        "monoid": {"name": "R1"},
        "domains": {"A": ["a1", "a2", "a3"], "B": ["b1", "b2"], "C": ["c"]},
        "relations": [
            rel("R", "AC", [(("a1", "c"), "1"), (("a2", "c"), "1"), (("a3", "c"), "1")]),
            rel("S", "BC", [(("b1", "c"), "3/2"), (("b2", "c"), "3/2")]),
        ],
        "b": ["1", "1", "1"], "c": ["3/2", "3/2"],
        "expect": [
            {"argv": ["check-pairwise"], "exit": 2, "report": {"outcome": "undecidable-here"}},
            {"argv": ["solve-transport"], "exit": 2, "report": {"verdict": "undecidable-here"}},
        ],
    })
    dump("psd", {
        "description": ("Positive semidefinite 2x2 matrices: rows (I+X)/2, (I-X)/2 and columns "
                        "(I+Z)/2, (I-Z)/2, each adding up to I. The instance has no PSD solution. "
                        "Stored as data only; there is no semidefinite solver in this package."),
        "tags": ["reference", "non-example", "data-only"],
        "matrices": {
            "I": [["1", "0"], ["0", "1"]],
            "X": [["0", "1"], ["1", "0"]],
            "Z": [["1", "0"], ["0", "-1"]],
        },
        "rows": [[["1/2", "1/2"], ["1/2", "1/2"]], [["1/2", "-1/2"], ["-1/2", "1/2"]]],
        "columns": [[["1", "0"], ["0", "0"]], [["0", "0"], ["0", "1"]]],
        "expect": [],
    })
    dump("b_bool", {
        "description": "Boolean transportation instance solved by x_ij = b_i and c_j.",
        "tags": ["reference"],
        "monoid": {"name": "B"}, "b": [1, 0, 1], "c": [1, 1],
        "expect": [
            {"argv": ["solve-transport"], "report": {"verdict": "feasible", "method": "lattice",
                                                     "matrix": [[1, 1], [0, 0], [1, 1]]}},
            {"argv": ["solve-transport", "--method", "p3"], "report": {"verdict": "feasible",
                                                                       "verified": True}},
        ],
    })
    dump("free_transport", {
        "description": "Free monoid instance solved one generator at a time.",
        "tags": ["derived"],
        "monoid": {"name": "free", "generators": ["x", "y"]},
        "b": [{"x": 1, "y": 1}, {"x": 1}], "c": [{"x": 1}, {"x": 1, "y": 1}],
        "expect": [
            {"argv": ["solve-transport"], "report": {
                "method": "componentwise",
                "matrix": [[{"x": 1}, {"y": 1}], [{}, {"x": 1}]]}},
        ],
    })
    c4 = {"vertices": ["A1", "A2", "A3", "A4"],
          "edges": [["A1", "A2"], ["A2", "A3"], ["A3", "A4"], ["A4", "A1"]]}
    dump("c4", {
        "description": "The 4-cycle schema.",
        "tags": ["reference", "hypergraph"],
        "schema": c4,
        "expect": [
            {"argv": ["check-acyclic"], "report": {"verdict": "cyclic", "core": "C_4",
                                                   "chordal": False, "conformal": True}},
            {"argv": ["counterexample", "--schema", "{fixture}", "--monoid", "N",
                      "--element", "1"],
             "report": {"a": 4, "pairwise": "consistent", "global": "inconsistent",
                        "parity_certificate.holds": True}},
            {"argv": ["cover-counterexample", "--schema", "{fixture}", "--monoid", "N2",
                      "--element", "1", "--cover", "free"],
             "report": {"lifts_pairwise": "consistent", "global": "inconsistent"}},
        ],
    })
    dump("h4", {
        "description": "All 3-subsets of four vertices.",
        "tags": ["reference", "hypergraph"],
        "schema": {"vertices": ["A1", "A2", "A3", "A4"],
                   "edges": [["A2", "A3", "A4"], ["A1", "A3", "A4"], ["A1", "A2", "A4"],
                             ["A1", "A2", "A3"]]},
        "expect": [
            {"argv": ["check-acyclic"], "report": {"verdict": "cyclic", "core": "H_4",
                                                   "chordal": True, "conformal": False}},
            {"argv": ["counterexample", "--schema", "{fixture}", "--monoid", "M2",
                      "--element", "1"],
             "report": {"pairwise": "consistent", "global": "inconsistent"}},
        ],
    })
    dump("c3", {
        "description": "The triangle: chordal but not conformal.",
        "tags": ["reference", "hypergraph"],
        "schema": {"vertices": ["A1", "A2", "A3"],
                   "edges": [["A1", "A2"], ["A2", "A3"], ["A3", "A1"]]},
        "expect": [
            {"argv": ["check-acyclic"], "report": {"verdict": "cyclic", "core": "H_3"}},
            {"argv": ["counterexample", "--schema", "{fixture}", "--monoid", "B",
                      "--element", "1"],
             "report": {"pairwise": "consistent", "global": "inconsistent"}},
        ],
    })
    dump("n_standard", {
        "description": "Consistent N-relations whose standard join is not a witness.",
        "tags": ["reference", "joins"],
        "monoid": {"name": "N"},
        "domains": {"A": [1, 2], "B": [2], "C": [1, 2]},
        "relations": [rel("R", "AB", [((1, 2), 1), ((2, 2), 1)]),
                      rel("S", "BC", [((2, 1), 1), ((2, 2), 1)])],
        "expect": [
            {"argv": ["join", "--method", "standard"], "report": {"witness": False}},
            {"argv": ["join", "--method", "northwest"], "report": {
                "witness": True, "support": "support: |W'|=2, bound=|R'|+|S'|=4"}},
            {"argv": ["check-pairwise"], "report": {"outcome": "consistent", "method": "northwest"}},
        ],
    })
    dump("q_vorobev", {
        "description": "Rational relations joined by the semifield formula.",
        "tags": ["derived", "joins"],
        "monoid": {"name": "Q"},
        "domains": {"A": ["a1", "a2"], "B": ["b"], "C": ["c1", "c2"]},
        "relations": [rel("R", "AB", [(("a1", "b"), "1/2"), (("a2", "b"), "1/2")]),
                      rel("S", "BC", [(("b", "c1"), "1/4"), (("b", "c2"), "3/4")])],
        "expect": [
            {"argv": ["join", "--method", "vorobev"], "report": {
                "witness": True, "relation.tuples.1.annotation": "3/8"}},
        ],
    })
    dump("n_path", {
        "description": "Globally consistent N-relations on a path, recovered by the chase.",
        "tags": ["derived"],
        "monoid": {"name": "N"},
        "domains": {"A": ["a1", "a2"], "B": ["b1", "b2"], "C": ["c1", "c2"], "D": ["d1"]},
        "relations": [rel("R", "AB", [(("a1", "b1"), 3), (("a2", "b2"), 2)]),
                      rel("S", "BC", [(("b1", "c1"), 1), (("b1", "c2"), 2), (("b2", "c2"), 2)]),
                      rel("T", "CD", [(("c1", "d1"), 1), (("c2", "d1"), 4)])],
        "expect": [
            {"argv": ["check-global"], "report": {"outcome": "consistent", "method": "chase,northwest"}},
        ],
    })


if __name__ == "__main__":
    main()
