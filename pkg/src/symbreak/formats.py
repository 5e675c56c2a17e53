"""Interchange formats: graph6 codec, DOT emission, JSON graph schema."""

from __future__ import annotations

import json
from collections.abc import Mapping, Sequence

from .errors import GraphFormatError
from .graphs import BoundaryRootedGraph, Graph

_HEADER = b">>graph6<<"


def _parse_order(data: bytes, pos: int) -> tuple[int, int]:
    """Decode the vertex-count prefix, returning (n, next position)."""
    if pos >= len(data):
        raise GraphFormatError("empty graph6 record", pos)
    b0 = data[pos]
    if b0 != 126:
        return b0 - 63, pos + 1
    if pos + 1 < len(data) and data[pos + 1] == 126:
        chunk = data[pos + 2 : pos + 8]
        if len(chunk) < 6:
            raise GraphFormatError("truncated long-form length", pos)
        n = 0
        for byte in chunk:
            n = (n << 6) | (byte - 63)
        return n, pos + 8
    chunk = data[pos + 1 : pos + 4]
    if len(chunk) < 3:
        raise GraphFormatError("truncated medium-form length", pos)
    n = 0
    for byte in chunk:
        n = (n << 6) | (byte - 63)
    return n, pos + 4


def parse_graph6(record: bytes | str) -> Graph:
    """Decode a single graph6 record (optional header, optional trailing
    newline) into a Graph. Errors carry the byte offset of the failure."""
    if isinstance(record, str):
        try:
            data = record.encode("ascii")
        except UnicodeEncodeError as exc:
            raise GraphFormatError("non-ASCII byte in graph6 text") from exc
    else:
        data = bytes(record)
    data = data.rstrip(b"\r\n")
    pos = 0
    if data.startswith(_HEADER):
        pos = len(_HEADER)

    for i in range(pos, len(data)):
        if not 63 <= data[i] <= 126:
            raise GraphFormatError(f"non-printable byte {data[i]:#x}", i)

    n, pos = _parse_order(data, pos)
    if n < 1:
        raise GraphFormatError("graph6 record encodes an empty vertex set", 0)
    nbits = n * (n - 1) // 2
    nbytes = (nbits + 5) // 6
    body = data[pos:]
    if len(body) < nbytes:
        raise GraphFormatError(
            f"truncated adjacency data: need {nbytes} bytes, have {len(body)}",
            pos + len(body),
        )
    if len(body) > nbytes:
        raise GraphFormatError("trailing garbage after adjacency data", pos + nbytes)

    edges = []
    k = 0
    for j in range(1, n):
        for i in range(j):
            byte = body[k // 6] - 63
            if (byte >> (5 - k % 6)) & 1:
                edges.append((i, j))
            k += 1
    return Graph(n, edges)


def emit_graph6(g: Graph) -> bytes:
    """Canonical graph6 bytes (no header, zero padding bits)."""
    n = g.n
    if n <= 62:
        prefix = bytes([63 + n])
    elif n <= 258047:
        prefix = bytes([126, 63 + (n >> 12), 63 + ((n >> 6) & 63), 63 + (n & 63)])
    else:
        prefix = bytes([126, 126]) + bytes(
            63 + ((n >> shift) & 63) for shift in range(30, -1, -6)
        )
    bits = []
    for j in range(1, n):
        for i in range(j):
            bits.append(1 if g.has_edge(i, j) else 0)
    while len(bits) % 6:
        bits.append(0)
    body = bytes(
        63 + (bits[k] << 5 | bits[k + 1] << 4 | bits[k + 2] << 3
              | bits[k + 3] << 2 | bits[k + 4] << 1 | bits[k + 5])
        for k in range(0, len(bits), 6)
    )
    return prefix + body


_DOT_PALETTE = (
    "white", "lightblue", "salmon", "palegreen", "gold",
    "plum", "khaki", "lightcyan", "orange", "violet",
)


def to_dot(
    brg: BoundaryRootedGraph | Graph,
    colouring: Mapping[int, int] | Sequence[int | None] | None = None,
    name: str = "g",
) -> str:
    """DOT text with vertex colour indices rendered as fill colours.

    Roots are drawn as boxes, boundary vertices with doubled borders.
    """
    if isinstance(brg, Graph):
        brg = BoundaryRootedGraph(brg)
    g = brg.graph

    def colour_of(v: int) -> int | None:
        if colouring is None:
            return None
        if isinstance(colouring, Mapping):
            return colouring.get(v)
        return colouring[v]

    lines = [f"graph {name} {{", "  node [style=filled fillcolor=white];"]
    for v in g.vertices:
        attrs = []
        c = colour_of(v)
        if c is not None:
            attrs.append(f'fillcolor="{_DOT_PALETTE[c % len(_DOT_PALETTE)]}"')
            attrs.append(f'label="{v}:{c}"')
        if v in brg.roots:
            attrs.append("shape=box")
        if v in brg.boundary:
            attrs.append("peripheries=2")
        lines.append(f"  {v} [{' '.join(attrs)}];" if attrs else f"  {v};")
    for u, w in g.edges:
        lines.append(f"  {u} -- {w};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def graph_to_json(brg: BoundaryRootedGraph | Graph) -> dict:
    """The JSON graph schema: {n, edges, roots, boundary}."""
    if isinstance(brg, Graph):
        brg = BoundaryRootedGraph(brg)
    return {
        "n": brg.graph.n,
        "edges": [list(e) for e in brg.graph.edges],
        "roots": sorted(brg.roots),
        "boundary": sorted(brg.boundary),
    }


def graph_from_json(obj: dict | str) -> BoundaryRootedGraph:
    """Parse the JSON graph schema into a BoundaryRootedGraph."""
    if isinstance(obj, str):
        try:
            obj = json.loads(obj)
        except json.JSONDecodeError as exc:
            raise GraphFormatError(f"invalid JSON: {exc}") from exc
    if not isinstance(obj, dict) or "n" not in obj or "edges" not in obj:
        raise GraphFormatError("JSON graph needs at least the keys 'n' and 'edges'")
    g = Graph(int(obj["n"]), [tuple(e) for e in obj["edges"]])
    return BoundaryRootedGraph(g, obj.get("roots", ()), obj.get("boundary", ()))
