from __future__ import annotations

import pytest

from symbreak.automorphisms import enumerate_automorphisms
from symbreak.errors import PreconditionError
from symbreak.families import FAMILIES, generate
from symbreak.formats import emit_graph6


CASES = [
    ("cycle", {"n": 5}),
    ("cycle", {"n": 8}),
    ("complete", {"n": 4}),
    ("complete_bipartite", {"r": 3}),
    ("petersen", {}),
    ("star", {"k": 4}),
    ("cycle_with_boundary_tail", {"n": 6, "tail_len": 3}),
    ("truncated_regular_tree", {"d": 3, "depth": 3}),
    ("grid", {"w": 4, "h": 3}),
    ("random_bounded_degree", {"n": 12, "max_degree": 4, "seed": 5}),
    ("delta_tightness", {"max_degree": 4, "tail_len": 3}),
    ("decorated_cycle", {"n": 5, "tail_len": 4, "twins": 1, "gadgets": 0}),
]


class TestGenerate:
    @pytest.mark.parametrize("family,params", CASES)
    def test_instances_valid(self, family, params):
        brg = generate(family, params)
        g = brg.graph
        # construction enforces simple + connected; spot-check symmetry
        assert all(u in g.adj_set(v) for u, v in g.edges)
        assert brg.roots <= set(g.vertices) and brg.boundary <= set(g.vertices)

    @pytest.mark.parametrize("family,params", CASES)
    def test_deterministic(self, family, params):
        a = generate(family, params, seed=7)
        b = generate(family, params, seed=7)
        assert a.graph == b.graph
        assert a.roots == b.roots and a.boundary == b.boundary

    def test_random_family_respects_degree_cap(self):
        for seed in range(10):
            brg = generate("random_bounded_degree", {"n": 14, "max_degree": 3, "seed": seed})
            assert brg.graph.max_degree <= 3

    def test_random_family_varies_with_seed(self):
        records = {
            emit_graph6(generate("random_bounded_degree",
                                 {"n": 10, "max_degree": 4, "seed": s}).graph)
            for s in range(6)
        }
        assert len(records) > 1

    def test_known_shapes(self):
        c5 = generate("cycle", {"n": 5})
        assert c5.graph.n == 5 and len(c5.graph.edges) == 5
        tree = generate("truncated_regular_tree", {"d": 3, "depth": 4})
        assert tree.graph.max_degree == 3
        assert tree.boundary == {
            v for v in tree.graph.vertices if tree.graph.degree(v) == 1
        }
        tight = generate("delta_tightness", {"max_degree": 4, "tail_len": 6})
        assert tight.graph.degree(0) == 4
        assert len([v for v in tight.graph.vertices if tight.graph.degree(v) == 1]) == 4

    def test_unknown_family(self):
        with pytest.raises(PreconditionError, match="unknown family"):
            generate("moebius", {})

    def test_unknown_parameter(self):
        with pytest.raises(PreconditionError, match="unknown parameters"):
            generate("cycle", {"m": 3})

    def test_invalid_parameters(self):
        with pytest.raises(PreconditionError):
            generate("cycle", {"n": 2})
        with pytest.raises(PreconditionError):
            generate("grid", {"w": 1, "h": 5})

    def test_decorated_cycle_degree_guard(self):
        with pytest.raises(PreconditionError):
            generate(
                "decorated_cycle",
                {"n": 5, "tail_len": 2, "twins": 4, "gadgets": 0},
            )

    def test_gadget_cycle_length_guard(self):
        with pytest.raises(PreconditionError, match="base cycle"):
            generate("decorated_cycle", {"n": 6, "tail_len": 8, "gadgets": 1})

    def test_petersen_group_order(self):
        assert len(enumerate_automorphisms(generate("petersen", {}))) == 120

    def test_registry_covers_all(self):
        assert set(FAMILIES) >= {
            "cycle", "complete", "complete_bipartite", "petersen", "star",
            "cycle_with_boundary_tail", "truncated_regular_tree", "grid",
            "random_bounded_degree", "delta_tightness",
        }
