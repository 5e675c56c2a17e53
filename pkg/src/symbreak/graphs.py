"""Core graph types and metric queries.

Vertices are dense integers ``0..n-1``; all tie-breaks anywhere in the
toolkit are lexicographic on vertex ids so runs are deterministic.
"""

from __future__ import annotations

import math
from collections import deque
from collections.abc import Iterable

from .errors import InvalidGraphError, PreconditionError, TruncationUnsuitableError

INF = math.inf


class Graph:
    """Simple undirected connected graph over vertices ``0..n-1``.

    Immutable after construction; invariants (no loops, no duplicate edges,
    symmetry, connectivity) are enforced by the constructor.
    """

    __slots__ = ("n", "_adj", "_adj_sets", "_edges")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]]):
        if n < 1:
            raise InvalidGraphError("graph needs at least one vertex")
        seen: set[tuple[int, int]] = set()
        adj: list[list[int]] = [[] for _ in range(n)]
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise InvalidGraphError(f"edge ({u},{v}) out of range for n={n}")
            if u == v:
                raise InvalidGraphError(f"self-loop at vertex {u}")
            key = (min(u, v), max(u, v))
            if key in seen:
                raise InvalidGraphError(f"duplicate edge ({u},{v})")
            seen.add(key)
            adj[u].append(v)
            adj[v].append(u)
        self.n = n
        self._adj = tuple(tuple(sorted(row)) for row in adj)
        self._adj_sets = tuple(frozenset(row) for row in adj)
        self._edges = tuple(sorted(seen))
        if n > 1:
            dist = bfs_distances(self, [0])
            if any(d == INF for d in dist):
                raise InvalidGraphError("graph is not connected")

    @property
    def edges(self) -> tuple[tuple[int, int], ...]:
        return self._edges

    @property
    def vertices(self) -> range:
        return range(self.n)

    def adj(self, v: int) -> tuple[int, ...]:
        return self._adj[v]

    def adj_set(self, v: int) -> frozenset[int]:
        return self._adj_sets[v]

    def has_edge(self, u: int, v: int) -> bool:
        return v in self._adj_sets[u]

    def degree(self, v: int) -> int:
        return len(self._adj[v])

    @property
    def max_degree(self) -> int:
        return max(len(row) for row in self._adj)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Graph)
            and self.n == other.n
            and self._edges == other._edges
        )

    def __hash__(self) -> int:
        return hash((self.n, self._edges))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={len(self._edges)})"


class BoundaryRootedGraph:
    """A graph together with a root set and a boundary set.

    Roots and boundary are both fixed pointwise by every admitted
    automorphism; the boundary marks the truncation frontier standing in for a
    deleted infinite remainder. The two sets may intersect and either may be
    empty.
    """

    __slots__ = ("graph", "roots", "boundary", "_aut_cache")

    def __init__(
        self,
        graph: Graph,
        roots: Iterable[int] = (),
        boundary: Iterable[int] = (),
    ):
        roots = frozenset(roots)
        boundary = frozenset(boundary)
        for v in roots | boundary:
            if not 0 <= v < graph.n:
                raise InvalidGraphError(f"root/boundary vertex {v} out of range")
        self.graph = graph
        self.roots = roots
        self.boundary = boundary
        self._aut_cache: tuple | None = None

    @property
    def fixed(self) -> frozenset[int]:
        return self.roots | self.boundary

    @property
    def n(self) -> int:
        return self.graph.n

    def with_roots(self, roots: Iterable[int]) -> "BoundaryRootedGraph":
        """Copy of this instance with the root set replaced."""
        return BoundaryRootedGraph(self.graph, roots, self.boundary)

    def __repr__(self) -> str:
        return (
            f"BoundaryRootedGraph(n={self.graph.n}, roots={sorted(self.roots)},"
            f" boundary={sorted(self.boundary)})"
        )


def bfs_distances(g: Graph, sources: Iterable[int]) -> list[float]:
    """Hop distance from the nearest source; unreachable vertices get inf."""
    sources = sorted(set(sources))
    if not sources:
        raise PreconditionError("bfs_distances needs a nonempty source set")
    dist: list[float] = [INF] * g.n
    queue: deque[int] = deque()
    for s in sources:
        dist[s] = 0
        queue.append(s)
    while queue:
        u = queue.popleft()
        for w in g.adj(u):
            if dist[w] == INF:
                dist[w] = dist[u] + 1
                queue.append(w)
    return dist


def is_connected_subset(g: Graph, vertices: Iterable[int]) -> bool:
    """Whether the induced subgraph on ``vertices`` is connected (and nonempty)."""
    vs = set(vertices)
    if not vs:
        return False
    start = min(vs)
    seen = {start}
    queue = deque([start])
    while queue:
        u = queue.popleft()
        for w in g.adj(u):
            if w in vs and w not in seen:
                seen.add(w)
                queue.append(w)
    return seen == vs


def girth(g: Graph) -> float:
    """Length of a shortest cycle, or inf when the graph is acyclic."""
    best = INF
    for root in g.vertices:
        dist: dict[int, int] = {root: 0}
        parent = {root: -1}
        queue = deque([root])
        while queue:
            u = queue.popleft()
            if 2 * dist[u] >= best - 1:
                continue
            for w in g.adj(u):
                if w not in dist:
                    dist[w] = dist[u] + 1
                    parent[w] = u
                    queue.append(w)
                elif parent[u] != w:
                    best = min(best, dist[u] + dist[w] + 1)
    return best


def shortest_cycle(g: Graph) -> list[int] | None:
    """A shortest cycle as an ordered vertex list, or None when acyclic.

    Ties break on the smallest lexicographic vertex sequence, the sequence
    starting at the cycle's least vertex. Shortest cycles are necessarily
    induced.
    """
    target = girth(g)
    if target == INF:
        return None
    length = int(target)

    # DFS for the lexicographically least closed walk of the target length
    # whose start is its minimum vertex. First hit in lex order wins.
    for start in g.vertices:
        path = [start]
        on_path = {start}

        def extend() -> list[int] | None:
            u = path[-1]
            depth = len(path)
            if depth == length:
                return list(path) if start in g.adj_set(u) else None
            for w in g.adj(u):
                if w <= start or w in on_path:
                    continue
                path.append(w)
                on_path.add(w)
                found = extend()
                if found is not None:
                    return found
                path.pop()
                on_path.remove(w)
            return None

        cycle = extend()
        if cycle is not None:
            # Normalise direction: of the two traversals starting at the
            # least vertex, keep the lexicographically smaller.
            reverse = [cycle[0]] + list(reversed(cycle[1:]))
            return min(cycle, reverse)
    return None


def geodesic_to_boundary(
    brg: BoundaryRootedGraph, start: int, avoid: Iterable[int] = ()
) -> list[int]:
    """Lexicographically least shortest path from ``start`` to the boundary
    whose internal vertices avoid the given set.

    The endpoints are exempt from ``avoid``. Raises TruncationUnsuitableError
    when no such path exists.
    """
    g = brg.graph
    avoid = frozenset(avoid)
    boundary = brg.boundary
    if not boundary:
        raise TruncationUnsuitableError("instance has an empty boundary set")
    if start in boundary:
        return [start]

    # Multi-source BFS from the boundary; only non-avoided vertices may be
    # expanded through, so dist[v] is the length of a v -> boundary path with
    # admissible interior.
    dist: list[float] = [INF] * g.n
    queue: deque[int] = deque()
    for b in sorted(boundary):
        dist[b] = 0
        queue.append(b)
    while queue:
        u = queue.popleft()
        if u in avoid and u not in boundary:
            continue
        for w in g.adj(u):
            if dist[w] == INF:
                dist[w] = dist[u] + 1
                queue.append(w)
    if dist[start] == INF:
        raise TruncationUnsuitableError(
            f"no path from {start} to the boundary avoids {sorted(avoid)}"
        )

    path = [start]
    cur = start
    while cur not in boundary:
        step = None
        for w in g.adj(cur):  # ascending, so the first admissible is lex-least
            if dist[w] != dist[cur] - 1:
                continue
            if w in avoid and w not in boundary:
                continue
            step = w
            break
        assert step is not None
        path.append(step)
        cur = step
    return path


def cycle_ray_roots(
    brg: BoundaryRootedGraph,
) -> tuple[list[int], list[int], list[int], int]:
    """Root ray built from a shortest cycle plus a geodesic to the boundary.

    Returns ``(ray, cycle, path, s)`` where the ray is the ordered root
    vertex list: the cycle traversed from the far neighbour of the dropped
    cycle vertex ``s`` round to the path's start, then the path out to the
    boundary. ``s`` is the dropped neighbour of the path's start on the cycle.
    """
    g = brg.graph
    cycle = shortest_cycle(g)
    if cycle is None:
        raise PreconditionError("graph is acyclic; no cycle-based root ray exists")
    cyc_set = set(cycle)

    path = None
    for p0 in sorted(cycle):
        try:
            path = geodesic_to_boundary(brg, p0, avoid=cyc_set - {p0})
        except TruncationUnsuitableError:
            continue
        break
    if path is None:
        raise TruncationUnsuitableError(
            "no cycle vertex reaches the boundary off the cycle"
        )
    p0 = path[0]

    k = cycle.index(p0)
    nb1 = cycle[(k + 1) % len(cycle)]
    nb2 = cycle[(k - 1) % len(cycle)]
    s = min(nb1, nb2)

    # Walk the cycle from s's other neighbour round to p0, away from s.
    if s == nb1:
        order = [cycle[(k + i) % len(cycle)] for i in range(2, len(cycle))]
    else:
        order = [cycle[(k - i) % len(cycle)] for i in range(2, len(cycle))]
    ray = order + path
    assert ray[-1] in brg.boundary and s not in ray
    return ray, cycle, path, s
