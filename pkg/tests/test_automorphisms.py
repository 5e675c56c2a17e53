from __future__ import annotations

import math
import random
from itertools import permutations

import pytest

from symbreak.automorphisms import (
    AutomorphismSet,
    compose,
    enumerate_automorphisms,
    identity,
    invert,
    is_automorphism,
    min_motion,
    motion,
    orbits,
    stabiliser,
)
from symbreak.colouring import PartialColouring
from symbreak.errors import CapExceededError, InvalidGraphError, PreconditionError
from symbreak.graphs import BoundaryRootedGraph, Graph


def cycle_graph(n):
    return Graph(n, [(i, (i + 1) % n) for i in range(n)])


def star_graph(k):
    return Graph(k + 1, [(0, i) for i in range(1, k + 1)])


def petersen_graph():
    outer = [(i, (i + 1) % 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    return Graph(10, outer + inner + spokes)


def brute_force_automorphisms(g, fixed=frozenset()):
    """Oracle: filter all n! permutations by adjacency preservation."""
    out = []
    for p in permutations(range(g.n)):
        if any(p[v] != v for v in fixed):
            continue
        if is_automorphism(g, p):
            out.append(p)
    return sorted(out)


def random_connected_graph(rng, n_max=7, n_min=2):
    n = rng.randint(n_min, n_max)
    while True:
        edges = [
            (i, j)
            for i in range(n)
            for j in range(i + 1, n)
            if rng.random() < rng.choice([0.3, 0.5, 0.7])
        ]
        try:
            return Graph(n, edges)
        except InvalidGraphError:
            continue


class TestPermBasics:
    def test_compose_and_invert(self):
        p = (1, 2, 0)
        q = (0, 2, 1)
        assert compose(p, q) == tuple(p[q[v]] for v in range(3))
        assert compose(p, invert(p)) == identity(3)

    def test_motion(self):
        assert motion(identity(6)) == 0
        rot = tuple((i + 1) % 6 for i in range(6))
        assert motion(rot) == 6
        assert motion((0, 2, 1, 3)) == 2


class TestEnumerate:
    def test_c4_dihedral(self):
        auts = enumerate_automorphisms(cycle_graph(4))
        assert len(auts) == 8
        assert auts.elements[0] == identity(4)

    def test_c4_one_root(self):
        brg = BoundaryRootedGraph(cycle_graph(4), roots=[0])
        auts = enumerate_automorphisms(brg)
        assert len(auts) == 2
        assert (0, 3, 2, 1) in auts

    def test_petersen_120(self):
        assert len(enumerate_automorphisms(petersen_graph())) == 120

    def test_cap_overflow(self):
        with pytest.raises(CapExceededError):
            enumerate_automorphisms(cycle_graph(6), cap=5)

    def test_cached_result_respects_cap(self):
        brg = BoundaryRootedGraph(cycle_graph(6))
        assert len(enumerate_automorphisms(brg)) == 12
        with pytest.raises(CapExceededError):
            enumerate_automorphisms(brg, cap=3)

    def test_oracle_equivalence_random(self):
        rng = random.Random(2024)
        for _ in range(120):
            g = random_connected_graph(rng)
            got = enumerate_automorphisms(g)
            assert list(got.elements) == brute_force_automorphisms(g)

    def test_oracle_equivalence_with_fixed_vertices(self):
        rng = random.Random(99)
        for _ in range(40):
            g = random_connected_graph(rng, n_max=6)
            roots = {v for v in g.vertices if rng.random() < 0.3}
            brg = BoundaryRootedGraph(g, roots=roots)
            got = enumerate_automorphisms(brg)
            assert list(got.elements) == brute_force_automorphisms(g, roots)

    def test_group_closure(self):
        auts = enumerate_automorphisms(petersen_graph())
        assert auts.group_flag
        sample = auts.elements[::17]
        members = set(auts.elements)
        for p in sample:
            assert invert(p) in members
            for q in sample:
                assert compose(p, q) in members


class TestStabiliser:
    def test_empty_colouring_is_full_group(self):
        brg = BoundaryRootedGraph(cycle_graph(6))
        c = PartialColouring(2)
        assert len(stabiliser(brg, c)) == 12

    def test_injective_total_colouring_trivial(self):
        brg = BoundaryRootedGraph(cycle_graph(6))
        c = PartialColouring.total(6, range(6))
        stab = stabiliser(brg, c)
        assert stab.elements == (identity(6),)
        assert stab.group_flag

    def test_one_coloured_vertex_weak_preservation(self):
        # A single coloured vertex constrains nothing: every dihedral element
        # maps it to an uncoloured vertex, where no comparison applies.
        brg = BoundaryRootedGraph(cycle_graph(6))
        c = PartialColouring(2, {0: 0})
        stab = stabiliser(brg, c)
        assert len(stab) == 12
        assert not stab.group_flag  # rotations move the domain off itself

    def test_domain_preserving_detection(self):
        # All leaves coloured alike: the leaf symmetries keep the domain
        # setwise fixed, so the stabiliser is a genuine group.
        brg = BoundaryRootedGraph(star_graph(3), roots=[0])
        c = PartialColouring(2, {1: 0, 2: 0, 3: 0})
        stab = stabiliser(brg, c)
        assert len(stab) == 6
        assert stab.group_flag
        members = set(stab.elements)
        for p in stab.elements:
            for q in stab.elements:
                assert compose(p, q) in members

    def test_not_domain_preserving(self):
        # A lone coloured vertex drifts off its domain under rotations.
        brg = BoundaryRootedGraph(cycle_graph(6))
        stab = stabiliser(brg, PartialColouring(2, {0: 0}))
        assert not stab.group_flag

    def test_stabiliser_subset_of_group(self):
        rng = random.Random(5)
        for _ in range(30):
            g = random_connected_graph(rng, n_max=6)
            brg = BoundaryRootedGraph(g)
            all_auts = set(enumerate_automorphisms(brg).elements)
            colours = {
                v: rng.randrange(2) for v in g.vertices if rng.random() < 0.4
            }
            stab = stabiliser(brg, PartialColouring(2, colours))
            assert set(stab.elements) <= all_auts

    def test_orbits_refine_under_extension(self):
        rng = random.Random(6)
        for _ in range(30):
            g = random_connected_graph(rng, n_max=6)
            brg = BoundaryRootedGraph(g)
            base = {v: rng.randrange(2) for v in g.vertices if rng.random() < 0.3}
            extra = dict(base)
            for v in g.vertices:
                if v not in extra and rng.random() < 0.3:
                    extra[v] = rng.randrange(2)
            orb_base = orbits(
                stabiliser(brg, PartialColouring(2, base)), g.vertices
            )
            orb_ext = orbits(
                stabiliser(brg, PartialColouring(2, extra)), g.vertices
            )
            lookup = {}
            for i, cell in enumerate(orb_base):
                for v in cell:
                    lookup[v] = i
            for cell in orb_ext:
                assert len({lookup[v] for v in cell}) == 1


class TestOrbitsAndMotion:
    def test_identity_only_singletons(self):
        auts = AutomorphismSet((identity(4),), group_flag=True)
        assert orbits(auts, range(4)) == [[0], [1], [2], [3]]

    def test_c6_single_orbit(self):
        auts = enumerate_automorphisms(cycle_graph(6))
        assert orbits(auts, range(6)) == [[0, 1, 2, 3, 4, 5]]

    def test_star_rooted_centre(self):
        brg = BoundaryRootedGraph(star_graph(3), roots=[0])
        auts = enumerate_automorphisms(brg)
        assert len(auts) == 6
        assert orbits(auts, range(4)) == [[0], [1, 2, 3]]

    def test_support_not_closed(self):
        auts = enumerate_automorphisms(cycle_graph(6))
        with pytest.raises(PreconditionError):
            orbits(auts, [0, 1])

    def test_min_motion_c6(self):
        # Oracle: direct minimum over the twelve dihedral elements.
        brg = BoundaryRootedGraph(cycle_graph(6))
        auts = enumerate_automorphisms(brg)
        expected = min(motion(p) for p in auts.nontrivial)
        assert min_motion(brg) == expected == 4

    def test_min_motion_star_rooted(self):
        brg = BoundaryRootedGraph(star_graph(3), roots=[0])
        assert min_motion(brg) == 2

    def test_min_motion_asymmetric_sentinel(self):
        # Distinct-length limbs on a triangle leave no symmetry at all.
        g = Graph(6, [(0, 1), (1, 2), (2, 0), (0, 3), (1, 4), (4, 5)])
        assert math.isinf(min_motion(BoundaryRootedGraph(g)))

    def test_min_motion_rooted_path_sentinel(self):
        g = Graph(3, [(0, 1), (1, 2)])
        assert math.isinf(min_motion(BoundaryRootedGraph(g, roots=[0])))
