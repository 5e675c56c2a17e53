"""Deterministic instance generators for experiments and tests."""

from __future__ import annotations

import random

from .errors import PreconditionError
from .graphs import BoundaryRootedGraph, Graph


def cycle(n: int) -> BoundaryRootedGraph:
    if n < 3:
        raise PreconditionError("cycle needs n >= 3")
    return BoundaryRootedGraph(Graph(n, [(i, (i + 1) % n) for i in range(n)]))


def complete(n: int) -> BoundaryRootedGraph:
    if n < 1:
        raise PreconditionError("complete needs n >= 1")
    return BoundaryRootedGraph(
        Graph(n, [(i, j) for i in range(n) for j in range(i + 1, n)])
    )


def complete_bipartite(r: int) -> BoundaryRootedGraph:
    if r < 1:
        raise PreconditionError("complete_bipartite needs r >= 1")
    return BoundaryRootedGraph(
        Graph(2 * r, [(i, r + j) for i in range(r) for j in range(r)])
    )


def petersen() -> BoundaryRootedGraph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    return BoundaryRootedGraph(Graph(10, outer + inner + spokes))


def star(k: int) -> BoundaryRootedGraph:
    if k < 1:
        raise PreconditionError("star needs k >= 1 leaves")
    return BoundaryRootedGraph(Graph(k + 1, [(0, i) for i in range(1, k + 1)]))


def cycle_with_boundary_tail(n: int, tail_len: int) -> BoundaryRootedGraph:
    """A cycle with a pendant path; the path's far end is the boundary."""
    if n < 3 or tail_len < 1:
        raise PreconditionError("need n >= 3 and tail_len >= 1")
    edges = [(i, (i + 1) % n) for i in range(n)]
    edges.append((0, n))
    edges += [(n + i, n + i + 1) for i in range(tail_len - 1)]
    g = Graph(n + tail_len, edges)
    return BoundaryRootedGraph(g, boundary=[n + tail_len - 1])


def truncated_regular_tree(d: int, depth: int) -> BoundaryRootedGraph:
    """Depth-truncated d-regular tree; the leaves form the boundary."""
    if d < 2 or depth < 1:
        raise PreconditionError("need d >= 2 and depth >= 1")
    edges = []
    level = [0]
    next_id = 1
    for layer in range(depth):
        new_level = []
        for v in level:
            fanout = d if layer == 0 else d - 1
            for _ in range(fanout):
                edges.append((v, next_id))
                new_level.append(next_id)
                next_id += 1
        level = new_level
    return BoundaryRootedGraph(Graph(next_id, edges), boundary=level)


def grid(w: int, h: int) -> BoundaryRootedGraph:
    """A w-by-h grid; the frame is the boundary."""
    if w < 2 or h < 2:
        raise PreconditionError("need w >= 2 and h >= 2")
    edges = []
    for r in range(h):
        for col in range(w):
            v = r * w + col
            if col + 1 < w:
                edges.append((v, v + 1))
            if r + 1 < h:
                edges.append((v, v + w))
    frame = [
        r * w + col
        for r in range(h)
        for col in range(w)
        if r in (0, h - 1) or col in (0, w - 1)
    ]
    return BoundaryRootedGraph(Graph(w * h, edges), boundary=frame)


def random_bounded_degree(n: int, max_degree: int, seed: int) -> BoundaryRootedGraph:
    """Random connected graph grown by seeded edge insertion under a degree
    cap (Mersenne Twister, so reruns with the same seed agree)."""
    if n < 2 or max_degree < 2:
        raise PreconditionError("need n >= 2 and max_degree >= 2")
    for attempt in range(200):
        rng = random.Random(f"{seed}:{attempt}:{n}:{max_degree}")
        degree = [0] * n
        chosen = set()
        pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
        rng.shuffle(pairs)
        target = min(len(pairs), n - 1 + rng.randrange(max(1, n // 2), n + 1))
        for u, v in pairs:
            if len(chosen) >= target:
                break
            if degree[u] < max_degree and degree[v] < max_degree:
                chosen.add((u, v))
                degree[u] += 1
                degree[v] += 1
        parent = list(range(n))

        def find(v):
            while parent[v] != v:
                parent[v] = parent[parent[v]]
                v = parent[v]
            return v

        for u, v in chosen:
            parent[find(u)] = find(v)
        if len({find(v) for v in range(n)}) == 1:
            return BoundaryRootedGraph(Graph(n, sorted(chosen)))
    raise PreconditionError(
        f"could not grow a connected graph with n={n}, max_degree={max_degree}"
    )


def delta_tightness(max_degree: int, tail_len: int) -> BoundaryRootedGraph:
    """Sharpness instance: a degree-1 vertex on an infinite-path stand-in
    receives max_degree - 1 new leaves. Its distinguishing number relative to
    the boundary is exactly max_degree - 1."""
    if max_degree < 3 or tail_len < 1:
        raise PreconditionError("need max_degree >= 3 and tail_len >= 1")
    edges = [(i, i + 1) for i in range(tail_len)]
    leaves = [tail_len + 1 + i for i in range(max_degree - 1)]
    edges += [(0, leaf) for leaf in leaves]
    g = Graph(tail_len + max_degree, edges)
    return BoundaryRootedGraph(g, boundary=[tail_len])


def decorated_cycle(
    n: int,
    tail_len: int,
    twins: int = 0,
    twin_len: int = 2,
    gadgets: int = 0,
    triples: int = 0,
    triple_len: int = 2,
    forks: int = 0,
    bintwins: int = 0,
    quads: int = 0,
) -> BoundaryRootedGraph:
    """A cycle-with-tail instance decorated with symmetric limbs, giving
    boundary-fixing automorphisms of controlled motion.

    Decorations hang off interior tail vertices, one kind per anchor, in the
    order twins, triples, forks, then matched gadget pairs (which take two
    anchors spaced three apart). ``twins`` twin paths of length ``twin_len``
    create moving pairs, ``triples`` triple paths create moving triples
    (symmetric limbs need depth at least 3 so every split the construction
    performs still has unexplored territory below it), ``forks`` attach twin
    stubs whose hubs carry four branching three-vertex arms, ``bintwins``
    attach twin binary trees whose members carry two private branches each,
    ``quads`` attach twin stems with four three-vertex arms each, and each
    gadget wires two twin-leaf pairs into a matched square.
    """
    if n < 3 or tail_len < 1:
        raise PreconditionError("need n >= 3 and tail_len >= 1")
    if gadgets and n > 5:
        raise PreconditionError(
            "gadget squares need base cycles of length at most 5 to keep the "
            "base cycle shortest"
        )
    anchors_needed = twins + triples + forks + bintwins + quads + gadgets * 2
    slots = []
    pos = 1
    for _ in range(twins + triples + forks + bintwins + quads):
        slots.append(pos)
        pos += 1
    gadget_slots = []
    for _ in range(gadgets):
        gadget_slots.append((pos, pos + 3))
        pos += 4
    if anchors_needed and pos > tail_len:
        raise PreconditionError(
            f"tail of length {tail_len} is too short for the decorations "
            f"(needs at least {pos - 1} interior vertices)"
        )

    edges = [(i, (i + 1) % n) for i in range(n)]
    edges.append((0, n))
    edges += [(n + i, n + i + 1) for i in range(tail_len - 1)]
    nxt = n + tail_len
    tail_vertex = lambda idx: n + idx - 1  # idx-th tail vertex, 1-based

    def attach_path(anchor: int, length: int) -> None:
        nonlocal nxt
        prev = anchor
        for _ in range(length):
            edges.append((prev, nxt))
            prev = nxt
            nxt += 1

    si = 0
    for _ in range(twins):
        anchor = tail_vertex(slots[si])
        si += 1
        attach_path(anchor, twin_len)
        attach_path(anchor, twin_len)
    for _ in range(triples):
        anchor = tail_vertex(slots[si])
        si += 1
        for _ in range(3):
            attach_path(anchor, triple_len)
    for _ in range(forks):
        anchor = tail_vertex(slots[si])
        si += 1
        for _ in range(2):
            edges.append((anchor, nxt))
            stem = nxt
            nxt += 1
            edges.append((stem, nxt))
            hub = nxt
            nxt += 1
            # Each hub branch gets a two-step runway so the splits the case
            # table performs always find unexplored territory below.
            for _ in range(4):
                attach_path(hub, 3)
    for _ in range(bintwins):
        anchor = tail_vertex(slots[si])
        si += 1
        # Twin binary trees: two private branches per member at every level,
        # chain bottoms so no leaf pair swaps with motion below 4.
        for _ in range(2):
            edges.append((anchor, nxt))
            stem = nxt
            nxt += 1
            for _ in range(2):
                edges.append((stem, nxt))
                mid = nxt
                nxt += 1
                for _ in range(2):
                    attach_path(mid, 2)
    for _ in range(quads):
        anchor = tail_vertex(slots[si])
        si += 1
        for _ in range(2):
            edges.append((anchor, nxt))
            stem = nxt
            nxt += 1
            for _ in range(4):
                attach_path(stem, 3)
    for a_idx, b_idx in gadget_slots:
        a, b = tail_vertex(a_idx), tail_vertex(b_idx)
        u, u2, v, v2 = nxt, nxt + 1, nxt + 2, nxt + 3
        nxt += 4
        edges += [(a, u), (a, u2), (b, v), (b, v2), (u, v), (u2, v2)]

    g = Graph(nxt, edges)
    brg = BoundaryRootedGraph(g, boundary=[n + tail_len - 1])
    if g.max_degree > 5:
        raise PreconditionError("decorations push the maximum degree past 5")
    return brg


FAMILIES = {
    "cycle": (cycle, ("n",)),
    "complete": (complete, ("n",)),
    "complete_bipartite": (complete_bipartite, ("r",)),
    "petersen": (petersen, ()),
    "star": (star, ("k",)),
    "cycle_with_boundary_tail": (cycle_with_boundary_tail, ("n", "tail_len")),
    "truncated_regular_tree": (truncated_regular_tree, ("d", "depth")),
    "grid": (grid, ("w", "h")),
    "random_bounded_degree": (random_bounded_degree, ("n", "max_degree", "seed")),
    "delta_tightness": (delta_tightness, ("max_degree", "tail_len")),
    "decorated_cycle": (
        decorated_cycle,
        ("n", "tail_len", "twins", "twin_len", "gadgets", "triples",
         "triple_len", "forks", "bintwins", "quads"),
    ),
}


def generate(family: str, params: dict, seed: int | None = None) -> BoundaryRootedGraph:
    """Build a named family instance; the seed feeds the random family when
    the parameters leave it out."""
    if family not in FAMILIES:
        raise PreconditionError(
            f"unknown family {family!r}; known: {', '.join(sorted(FAMILIES))}"
        )
    fn, names = FAMILIES[family]
    params = dict(params)
    unknown = set(params) - set(names)
    if unknown:
        raise PreconditionError(f"unknown parameters for {family}: {sorted(unknown)}")
    if family == "random_bounded_degree" and "seed" not in params and seed is not None:
        params["seed"] = seed
    return fn(**params)
