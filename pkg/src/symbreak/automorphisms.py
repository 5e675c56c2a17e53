"""Automorphism enumeration, stabilisers, orbits and motion.

Permutations are tuples ``p`` with ``p[v]`` the image of vertex ``v``.
Enumeration is a vertex-by-vertex backtracking search pruned by an equitable
partition (degree refinement with roots and boundary pre-fixed as singleton
cells); automorphism sets are materialised explicitly behind an element cap.
"""

from __future__ import annotations

import sys
from collections.abc import Iterable, Mapping
from dataclasses import dataclass

from .errors import CapExceededError, PreconditionError
from .graphs import INF, BoundaryRootedGraph, Graph

DEFAULT_CAP = 10**6

Perm = tuple[int, ...]


def identity(n: int) -> Perm:
    return tuple(range(n))


def compose(p: Perm, q: Perm) -> Perm:
    """Composition acting as p after q: (p*q)(v) = p(q(v))."""
    return tuple(p[x] for x in q)


def invert(p: Perm) -> Perm:
    inv = [0] * len(p)
    for v, w in enumerate(p):
        inv[w] = v
    return tuple(inv)


def motion(p: Perm) -> int:
    """Number of vertices the permutation moves."""
    return sum(1 for v, w in enumerate(p) if v != w)


def is_automorphism(g: Graph, p: Perm) -> bool:
    """Whether p preserves adjacency (early exit on first mismatch)."""
    for u in g.vertices:
        pu = p[u]
        if g.degree(u) != g.degree(pu):
            return False
        adj_pu = g.adj_set(pu)
        for w in g.adj(u):
            if p[w] not in adj_pu:
                return False
    return True


@dataclass(frozen=True)
class AutomorphismSet:
    """An explicit list of automorphisms, identity first, sorted.

    ``group_flag`` records whether the set is closed under composition; it is
    always true for full automorphism groups, and for stabilisers exactly when
    the colouring is domain preserving.
    """

    elements: tuple[Perm, ...]
    group_flag: bool

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, p: Perm) -> bool:
        return p in self.elements

    @property
    def nontrivial(self) -> tuple[Perm, ...]:
        return self.elements[1:]

    def fixed_vertices(self) -> frozenset[int]:
        """Vertices fixed by every element."""
        if not self.elements:
            return frozenset()
        n = len(self.elements[0])
        return frozenset(
            v for v in range(n) if all(p[v] == v for p in self.elements)
        )


def _refined_cells(g: Graph, fixed: frozenset[int]) -> list[int]:
    """Stable equitable-partition labels; fixed vertices are singleton cells."""
    labels = [-(v + 1) if v in fixed else g.degree(v) for v in g.vertices]
    ncells = len(set(labels))
    while True:
        signatures = [
            (labels[v], tuple(sorted(labels[w] for w in g.adj(v))))
            for v in g.vertices
        ]
        order = {sig: i for i, sig in enumerate(sorted(set(signatures)))}
        labels = [order[sig] for sig in signatures]
        if len(order) == ncells:
            return labels
        ncells = len(order)


def enumerate_automorphisms(
    brg: BoundaryRootedGraph | Graph, cap: int = DEFAULT_CAP
) -> AutomorphismSet:
    """All adjacency-preserving permutations fixing roots and boundary
    pointwise, in deterministic (lexicographic) order.

    Raises CapExceededError when more than ``cap`` elements exist. Results are
    cached on the instance, so repeated stabiliser queries share one search.
    """
    if isinstance(brg, Graph):
        brg = BoundaryRootedGraph(brg)
    cached = brg._aut_cache
    if cached is not None:
        if len(cached) > cap:
            raise CapExceededError(cap)
        return AutomorphismSet(cached, group_flag=True)

    g = brg.graph
    n = g.n
    labels = _refined_cells(g, brg.fixed)
    cells: dict[int, list[int]] = {}
    for v in g.vertices:
        cells.setdefault(labels[v], []).append(v)
    candidates = {v: tuple(cells[labels[v]]) for v in g.vertices}

    # Map forced vertices first, then small cells; ties by id.
    order = sorted(g.vertices, key=lambda v: (len(candidates[v]), v))
    mapping = [-1] * n
    used = [False] * n
    found: list[Perm] = []

    def backtrack(idx: int) -> None:
        if idx == n:
            if len(found) >= cap:
                raise CapExceededError(cap)
            found.append(tuple(mapping))
            return
        v = order[idx]
        adj_v = g.adj(v)
        mapped_images = [mapping[u] for u in adj_v if mapping[u] != -1]
        want = len(mapped_images)
        for w in candidates[v]:
            if used[w]:
                continue
            adj_w = g.adj_set(w)
            if any(img not in adj_w for img in mapped_images):
                continue
            if sum(1 for x in adj_w if used[x]) != want:
                continue
            mapping[v] = w
            used[w] = True
            backtrack(idx + 1)
            mapping[v] = -1
            used[w] = False

    old_limit = sys.getrecursionlimit()
    sys.setrecursionlimit(max(old_limit, n + 100))
    try:
        backtrack(0)
    finally:
        sys.setrecursionlimit(old_limit)
    found.sort()
    brg._aut_cache = tuple(found)
    return AutomorphismSet(tuple(found), group_flag=True)


def _preserves_colouring(p: Perm, assignments: Mapping[int, int]) -> bool:
    """Colour preservation in the partial sense: colours must agree whenever
    both the vertex and its image are coloured."""
    for v, col in assignments.items():
        img_col = assignments.get(p[v])
        if img_col is not None and img_col != col:
            return False
    return True


def stabiliser(
    brg: BoundaryRootedGraph,
    colouring,
    cap: int = DEFAULT_CAP,
) -> AutomorphismSet:
    """All root/boundary-fixing automorphisms preserving the partial
    colouring (agreement required only where both endpoints are coloured).

    ``group_flag`` is set exactly when the colouring is domain preserving,
    i.e. every element maps the coloured set onto itself.
    """
    assignments = dict(colouring.items())
    auts = enumerate_automorphisms(brg, cap)
    kept = tuple(p for p in auts if _preserves_colouring(p, assignments))
    domain = set(assignments)
    preserving = all(
        all(p[v] in domain for v in domain) for p in kept
    )
    return AutomorphismSet(kept, group_flag=preserving)


def orbits(auts: AutomorphismSet, support: Iterable[int]) -> list[list[int]]:
    """Orbit partition of ``support``, least representative first.

    ``support`` must be closed under every element of the set.
    """
    support = set(support)
    for p in auts:
        for v in support:
            if p[v] not in support:
                raise PreconditionError(
                    f"support is not closed: {v} maps to {p[v]} outside it"
                )
    # Partition into components of the symmetric closure of v ~ p(v). For
    # group-closed sets this is the plain orbit partition; for bare sets it is
    # still a well-defined partition.
    parent = {v: v for v in support}

    def find(v: int) -> int:
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    for p in auts:
        for v in support:
            rv, rw = find(v), find(p[v])
            if rv != rw:
                parent[max(rv, rw)] = min(rv, rw)

    cells: dict[int, list[int]] = {}
    for v in sorted(support):
        cells.setdefault(find(v), []).append(v)
    return [cells[root] for root in sorted(cells)]


def min_motion(
    brg: BoundaryRootedGraph, cap: int = DEFAULT_CAP
) -> int | float:
    """Minimum motion over nontrivial admitted automorphisms; inf when the
    group is trivial (the unbounded sentinel)."""
    auts = enumerate_automorphisms(brg, cap)
    if len(auts) <= 1:
        return INF
    return min(motion(p) for p in auts.nontrivial)
