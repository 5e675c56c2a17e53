"""Partial colourings, the distinguishing predicates, and the exact solver."""

from __future__ import annotations

from collections.abc import Iterable, Mapping
from dataclasses import dataclass
from itertools import product

from .automorphisms import DEFAULT_CAP, enumerate_automorphisms, stabiliser
from .errors import BudgetExceededError, PreconditionError, StructuralViolationError
from .graphs import BoundaryRootedGraph, Graph

DEFAULT_BUDGET = 10**8


class PartialColouring:
    """A partial map from vertices to colours ``0..k-1``."""

    __slots__ = ("k", "_map")

    def __init__(self, k: int, assignments: Mapping[int, int] | Iterable = ()):
        if k < 1:
            raise PreconditionError("colour count k must be at least 1")
        items = dict(assignments.items()) if isinstance(assignments, Mapping) else dict(assignments)
        for v, c in items.items():
            if not 0 <= c < k:
                raise PreconditionError(f"colour {c} at vertex {v} outside 0..{k - 1}")
        self.k = k
        self._map = items

    @classmethod
    def total(cls, k: int, values: Iterable[int]) -> "PartialColouring":
        return cls(k, dict(enumerate(values)))

    @property
    def domain(self) -> frozenset[int]:
        return frozenset(self._map)

    def get(self, v: int) -> int | None:
        return self._map.get(v)

    def __contains__(self, v: int) -> bool:
        return v in self._map

    def __len__(self) -> int:
        return len(self._map)

    def items(self):
        return self._map.items()

    def is_total(self, n: int) -> bool:
        return len(self._map) == n

    def assign(self, pairs: Iterable[tuple[int, int]]) -> "PartialColouring":
        """Functional update; re-assigning a vertex a different colour is an error."""
        new = dict(self._map)
        for v, c in pairs:
            if new.get(v, c) != c:
                raise PreconditionError(
                    f"vertex {v} already coloured {new[v]}, refusing {c}"
                )
            new[v] = c
        return PartialColouring(self.k, new)

    def extends(self, other: "PartialColouring") -> bool:
        """Whether this colouring agrees with ``other`` on all of its domain."""
        return all(self._map.get(v) == c for v, c in other._map.items())

    def as_list(self, n: int) -> list[int | None]:
        return [self._map.get(v) for v in range(n)]

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, PartialColouring)
            and self.k == other.k
            and self._map == other._map
        )

    def __hash__(self) -> int:
        return hash((self.k, tuple(sorted(self._map.items()))))

    def __repr__(self) -> str:
        return f"PartialColouring(k={self.k}, {dict(sorted(self._map.items()))})"


def compatible(c1: PartialColouring, c2: PartialColouring) -> bool:
    """Whether the two maps agree wherever both are defined."""
    small, big = (c1, c2) if len(c1) <= len(c2) else (c2, c1)
    return all(big.get(v) in (None, col) for v, col in small.items())


def union_colouring(c1: PartialColouring, c2: PartialColouring) -> PartialColouring:
    """Union of two compatible partial colourings."""
    for v, col in c1.items():
        other = c2.get(v)
        if other is not None and other != col:
            raise PreconditionError(
                f"incompatible colourings: vertex {v} is {col} vs {other}"
            )
    merged = dict(c2.items())
    merged.update(c1.items())
    return PartialColouring(max(c1.k, c2.k), merged)


def is_set_distinguishing(
    brg: BoundaryRootedGraph,
    c: PartialColouring,
    vertices: Iterable[int],
    cap: int = DEFAULT_CAP,
) -> bool:
    """Whether every colour-preserving admitted automorphism fixes each of
    the given vertices."""
    vertices = list(vertices)
    return all(
        all(p[v] == v for v in vertices) for p in stabiliser(brg, c, cap)
    )


def is_set_preserving(
    brg: BoundaryRootedGraph,
    c: PartialColouring,
    vertices: Iterable[int],
    cap: int = DEFAULT_CAP,
) -> bool:
    """Whether every colour-preserving admitted automorphism maps the given
    set onto itself."""
    vs = frozenset(vertices)
    return all(
        all(p[v] in vs for v in vs) for p in stabiliser(brg, c, cap)
    )


def is_domain_preserving(
    brg: BoundaryRootedGraph, c: PartialColouring, cap: int = DEFAULT_CAP
) -> bool:
    return is_set_preserving(brg, c, c.domain, cap)


def is_distinguishing(g: Graph | BoundaryRootedGraph, c: PartialColouring) -> bool:
    """Whether a total colouring admits only the identity as a
    colour-preserving automorphism (roots and boundary stay fixed when a
    rooted instance is given)."""
    brg = g if isinstance(g, BoundaryRootedGraph) else BoundaryRootedGraph(g)
    if not c.is_total(brg.graph.n):
        raise PreconditionError("is_distinguishing needs a total colouring")
    stab = stabiliser(brg, c)
    return len(stab) == 1


@dataclass(frozen=True)
class DistinguishingResult:
    """Outcome of the exact solver: ``number`` is None when every colour
    count up to ``k_max`` fails, making ``k_max + 1`` a lower bound."""

    number: int | None
    k_max: int
    colouring: PartialColouring | None
    candidates_checked: int

    @property
    def lower_bound(self) -> int:
        return self.number if self.number is not None else self.k_max + 1

    def report(self) -> str:
        if self.number is not None:
            return f"D = {self.number}"
        return f"D > {self.k_max}"


def distinguishing_number(
    g: Graph | BoundaryRootedGraph,
    k_max: int,
    budget: int = DEFAULT_BUDGET,
    cap: int = DEFAULT_CAP,
) -> DistinguishingResult:
    """Least k <= k_max admitting a distinguishing k-colouring.

    Exhaustive search in lexicographic order with orbit pruning: candidates
    that are not lexicographically minimal in their automorphism orbit are
    skipped. Relative to roots and boundary when a rooted instance is given.
    Exceeding the candidate budget raises, never returns a wrong answer.
    """
    if k_max < 1:
        raise PreconditionError("k_max must be at least 1")
    brg = g if isinstance(g, BoundaryRootedGraph) else BoundaryRootedGraph(g)
    n = brg.graph.n
    auts = enumerate_automorphisms(brg, cap)
    others = auts.nontrivial
    checked = 0

    if not others:
        return DistinguishingResult(1, k_max, PartialColouring.total(1, [0] * n), 1)

    for k in range(1, k_max + 1):
        for cand in product(range(k), repeat=n):
            checked += 1
            if checked > budget:
                raise BudgetExceededError(budget)
            minimal = True
            preserved = False
            for p in others:
                image = tuple(cand[p[v]] for v in range(n))
                if image < cand:
                    minimal = False
                    break
                if image == cand:
                    preserved = True
            if minimal and not preserved:
                return DistinguishingResult(
                    k, k_max, PartialColouring.total(k, cand), checked
                )
    return DistinguishingResult(None, k_max, None, checked)


def verify_chain(
    brg: BoundaryRootedGraph,
    chain: list[PartialColouring],
    sets: list[Iterable[int]],
    cap: int = DEFAULT_CAP,
) -> bool:
    """Check an increasing chain of colourings against its target sets.

    True when each colouring in the chain extends the previous one, the i-th
    colouring pins the i-th vertex set pointwise, and the sets cover all
    vertices; the final colouring is then distinguishing for the instance,
    which is also asserted directly. A non-increasing chain is a caller
    error and raises.
    """
    if not chain:
        raise PreconditionError("verify_chain needs a nonempty chain")
    if len(chain) != len(sets):
        raise PreconditionError("chain and sets must have equal length")
    for i in range(1, len(chain)):
        if not chain[i].extends(chain[i - 1]):
            raise PreconditionError(f"chain is not increasing at index {i}")

    covered: set[int] = set()
    for c, vs in zip(chain, sets):
        vs = set(vs)
        if not is_set_distinguishing(brg, c, vs, cap):
            return False
        covered |= vs
    if covered != set(brg.graph.vertices):
        return False

    final = chain[-1]
    if not is_set_distinguishing(brg, final, brg.graph.vertices, cap):
        raise StructuralViolationError(
            "chain verified but final colouring is not distinguishing"
        )
    return True
