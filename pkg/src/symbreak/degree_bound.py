"""The (max degree - 1)-colouring construction for boundary-rooted
truncations, with the colour-0 ray uniqueness check."""

from __future__ import annotations

from collections.abc import Iterable
from dataclasses import dataclass

from .automorphisms import DEFAULT_CAP, stabiliser
from .colouring import PartialColouring
from .errors import (
    PreconditionError,
    StructuralViolationError,
    TruncationUnsuitableError,
)
from .graphs import (
    BoundaryRootedGraph,
    Graph,
    bfs_distances,
    cycle_ray_roots,
    geodesic_to_boundary,
    is_connected_subset,
    shortest_cycle,
)


@dataclass(frozen=True)
class NeighbourhoodClass:
    """Frontier vertices sharing exactly the same coloured-side neighbours."""

    members: tuple[int, ...]
    anchors: frozenset[int]


@dataclass(frozen=True)
class RootStructure:
    ray: list[int]
    kind: str  # "cycle" or "tree"
    cycle: list[int]
    path: list[int]
    dropped: int | None


def select_root_structure(brg: BoundaryRootedGraph) -> RootStructure:
    """Root ray for the colouring: a shortest cycle spliced with a geodesic
    to the boundary when the graph has a cycle, otherwise a geodesic from a
    non-boundary leaf to the boundary."""
    g = brg.graph
    if shortest_cycle(g) is not None:
        ray, cycle, path, dropped = cycle_ray_roots(brg)
        return RootStructure(ray, "cycle", cycle, path, dropped)
    leaves = [v for v in g.vertices if g.degree(v) == 1 and v not in brg.boundary]
    if not leaves:
        raise PreconditionError(
            "leafless acyclic truncation: the tree 2-colouring route applies, "
            "not this construction"
        )
    for leaf in leaves:
        try:
            path = geodesic_to_boundary(brg, leaf)
        except TruncationUnsuitableError:
            continue
        return RootStructure(path, "tree", [], path, None)
    raise TruncationUnsuitableError("no leaf reaches the boundary")


def neighbourhood_classes(g: Graph, region: Iterable[int]) -> list[NeighbourhoodClass]:
    """Partition of the frontier of a connected region by the exact
    neighbour set inside it, classes ordered by least member."""
    region = frozenset(region)
    if not is_connected_subset(g, region):
        raise PreconditionError("region must be nonempty and connected")
    by_anchor: dict[frozenset[int], list[int]] = {}
    for v in g.vertices:
        if v in region:
            continue
        anchors = g.adj_set(v) & region
        if anchors:
            by_anchor.setdefault(anchors, []).append(v)
    classes = [
        NeighbourhoodClass(tuple(sorted(ms)), anchors)
        for anchors, ms in by_anchor.items()
    ]
    return sorted(classes, key=lambda cl: cl.members[0])


@dataclass
class ClassStep:
    i: int
    v: int
    members: tuple[int, ...]
    colours: tuple[int, ...]
    domain_distinguishing: bool

    def as_dict(self) -> dict:
        return {
            "i": self.i,
            "v": self.v,
            "class_members": list(self.members),
            "colours_assigned": list(self.colours),
            "domain_distinguishing": self.domain_distinguishing,
        }


@dataclass
class DegreeBoundResult:
    colouring: PartialColouring
    ray: list[int]
    kind: str
    run_graph: BoundaryRootedGraph
    steps: list[ClassStep]
    colours_used: int
    order: dict[int, int]  # vertex -> step index at which it was coloured
    zero_ray_unique: bool
    zero_ray_witness: list[int] | None

    def trace_dicts(self) -> list[dict]:
        return [s.as_dict() for s in self.steps]


def degree_minus_one_colouring(
    brg: BoundaryRootedGraph, cap: int = DEFAULT_CAP
) -> DegreeBoundResult:
    """Colour the whole truncation with at most max_degree - 1 colours so
    that no boundary-fixing automorphism but the identity preserves it.

    The root ray takes colour 0; then the uncoloured vertex nearest the ray
    is coloured together with its whole neighbourhood class, injectively,
    avoiding 0 unless the class exhausts the colour budget. Every
    intermediate colouring is verified to pin its own domain pointwise.
    """
    g = brg.graph
    delta = g.max_degree
    if delta < 3:
        raise PreconditionError(f"maximum degree {delta} is below 3")
    if brg.roots:
        raise PreconditionError(
            "the construction chooses its own roots; pass an instance whose "
            "root set is empty"
        )
    structure = select_root_structure(brg)
    ray = structure.ray
    run_graph = BoundaryRootedGraph(g, roots=ray, boundary=brg.boundary)
    k = delta - 1

    colours = {r: 0 for r in ray}
    order = {r: 0 for r in ray}
    dist_to_ray = bfs_distances(g, ray)
    steps: list[ClassStep] = []
    i = 0
    while len(colours) < g.n:
        i += 1
        v = min(
            (u for u in g.vertices if u not in colours),
            key=lambda u: (dist_to_ray[u], u),
        )
        region = frozenset(colours)
        anchors = g.adj_set(v) & region
        if not anchors:
            raise StructuralViolationError(
                f"nearest uncoloured vertex {v} has no coloured neighbour"
            )
        members = tuple(
            sorted(
                u
                for u in g.vertices
                if u not in colours and g.adj_set(u) & region == anchors
            )
        )
        if len(members) > k:
            raise StructuralViolationError(
                f"neighbourhood class {members} exceeds the size bound {k}"
            )
        if len(members) == k:
            palette = list(range(1, k)) + [0]
        else:
            palette = list(range(1, len(members) + 1))
        for u, colour in zip(members, palette):
            colours[u] = colour
            order[u] = i
        snapshot = PartialColouring(k, colours)
        if not is_connected_subset(g, colours):
            raise StructuralViolationError("coloured region became disconnected")
        stab = stabiliser(run_graph, snapshot, cap)
        dom_ok = all(p[u] == u for p in stab for u in snapshot.domain)
        steps.append(ClassStep(i, v, members, tuple(palette), dom_ok))
        if not dom_ok:
            raise StructuralViolationError(
                f"step {i} colouring does not pin its domain",
                witness=next(
                    p for p in stab if any(p[u] != u for u in snapshot.domain)
                ),
            )

    final = PartialColouring(k, colours)
    used = len(set(colours.values()))
    stab = stabiliser(run_graph, final, cap)
    if len(stab) != 1:
        raise StructuralViolationError(
            "final colouring admits a nontrivial colour-preserving automorphism",
            witness=stab.elements[1],
        )
    unique, witness = zero_ray_is_unique(run_graph, final, ray)
    return DegreeBoundResult(
        colouring=final,
        ray=ray,
        kind=structure.kind,
        run_graph=run_graph,
        steps=steps,
        colours_used=used,
        order=order,
        zero_ray_unique=unique,
        zero_ray_witness=witness,
    )


def _candidate_zero_rays(
    brg: BoundaryRootedGraph, c: PartialColouring, path_cap: int = 200000
) -> list[list[int]]:
    """All simple colour-0 paths ending on the boundary (the finite stand-in
    for one-way infinite rays)."""
    g = brg.graph
    zeros = sorted(v for v in g.vertices if c.get(v) == 0)
    zero_set = set(zeros)
    out = []
    budget = [path_cap]

    def extend(path, on_path):
        budget[0] -= 1
        if budget[0] < 0:
            raise StructuralViolationError("zero-ray enumeration blew its budget")
        tip = path[-1]
        if tip in brg.boundary and len(path) > 1:
            out.append(list(path))
        for w in g.adj(tip):
            if w in zero_set and w not in on_path:
                path.append(w)
                on_path.add(w)
                extend(path, on_path)
                path.pop()
                on_path.remove(w)

    for start in zeros:
        extend([start], {start})
    return out


def _satisfies_start_property(
    g: Graph, path: list[int]
) -> bool:
    """First vertex is a leaf, or shares a neighbour off the path with a
    later path vertex."""
    q0 = path[0]
    if g.degree(q0) == 1:
        return True
    off_path = set(g.adj(q0)) - set(path)
    return any(
        off_path & g.adj_set(qj) for qj in path[1:]
    )


def zero_ray_is_unique(
    brg: BoundaryRootedGraph,
    c: PartialColouring,
    ray: list[int],
) -> tuple[bool, list[int] | None]:
    """Whether the root ray is the only maximal colour-0 path to the
    boundary whose first vertex is a leaf or shares an outside neighbour
    with a later ray vertex. Returns a counterexample path when violated."""
    if not c.is_total(brg.graph.n):
        raise PreconditionError("the check needs a total colouring")
    expected = list(ray)
    found_expected = False
    for path in _candidate_zero_rays(brg, c):
        if not _satisfies_start_property(brg.graph, path):
            continue
        if path == expected:
            found_expected = True
        elif set(path) <= set(expected):
            # sub-rays of the root ray itself do not compete with it
            continue
        else:
            return False, path
    if not found_expected:
        return False, None
    return True, None
