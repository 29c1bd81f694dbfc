"""Classification of #(T intersect T+s) from walks in the neighbor graph.

Every point of the intersection corresponds to an infinite walk from s,
whose edge labels spell out the radix addresses of the point (first label
component) and of its preimage under the translation (second component).
A reachable subgraph where every node has exactly one outgoing edge pins
the intersection to a single exactly computable point. Otherwise
eventually periodic walks (simple path, then simple cycle) are enumerated:
two walks evaluating to distinct rationals witness at least two points,
while full agreement stays honestly Unknown, since distinct walks may
share a value.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

from . import exact
from .neighbors import NeighborGraph, neighbor_graph
from .system import TileSystem

MAX_CYCLES = 10**4
MAX_PATHS = 10**4

EMPTY = "empty"
SINGLE = "single"
AT_LEAST_TWO = "at-least-two"
UNKNOWN = "unknown"


@dataclass(frozen=True)
class Address:
    """Eventually periodic digit-index address, preperiod then cycle."""

    preperiod: tuple[int, ...]
    period: tuple[int, ...]


@dataclass(frozen=True)
class Witness:
    address: Address
    point: exact.RationalVector


@dataclass(frozen=True)
class IntersectionClass:
    tag: str
    point: exact.RationalVector | None = None
    address: Address | None = None
    witnesses: tuple[Witness, ...] = ()
    diagnostic: str | None = None


def _digit_seq(ts: TileSystem, indices) -> list[exact.IntVector]:
    return [ts.digits[i] for i in indices]


def _walk_witness(ts: TileSystem, s, pre_edges, cyc_edges) -> Witness:
    """Evaluate a walk given by explicit edges and cross-check it exactly.

    The first label stream gives the point z, the second stream gives z - s;
    their difference must reproduce s, else the graph is corrupted.
    """
    addr = Address(
        preperiod=tuple(e[0] for e in pre_edges),
        period=tuple(e[0] for e in cyc_edges),
    )
    point = exact.periodic_point(
        ts.matrix, _digit_seq(ts, addr.preperiod), _digit_seq(ts, addr.period)
    )
    shadow = exact.periodic_point(
        ts.matrix,
        _digit_seq(ts, [e[1] for e in pre_edges]),
        _digit_seq(ts, [e[1] for e in cyc_edges]),
    )
    assert all(
        a - b == c for a, b, c in zip(point, shadow, s)
    ), f"walk from {s} violates the translation identity"
    return Witness(address=addr, point=point)


def _unique_walk_edges(graph: NeighborGraph, s):
    """Edges of the single infinite walk when every reachable node has
    out-degree one; it closes into a cycle within |R| steps by pigeonhole."""
    seen: dict = {}
    edges: list = []
    node = s
    while node not in seen:
        seen[node] = len(edges)
        e = graph.out_edges(node)[0]
        edges.append(e)
        node = e[2]
    start = seen[node]
    return edges[:start], edges[start:]


def _simple_cycles(graph: NeighborGraph, nodes) -> Iterator[tuple]:
    """Edge-level simple cycles, deterministically ordered, capped.

    Each cycle is reported rooted at its smallest node; parallel edges with
    different labels count as different cycles because they spell different
    digit streams.
    """
    nodes = sorted(nodes)
    allowed = set(nodes)
    count = 0
    for root in nodes:
        stack = [(root, iter(graph.out_edges(root)))]
        onpath = [root]
        edges: list = []
        while stack:
            node, it = stack[-1]
            advanced = False
            for e in it:
                tgt = e[2]
                if tgt == root:
                    count += 1
                    yield tuple(edges + [e])
                    if count >= MAX_CYCLES:
                        return
                elif tgt > root and tgt not in onpath and tgt in allowed:
                    edges.append(e)
                    onpath.append(tgt)
                    stack.append((tgt, iter(graph.out_edges(tgt))))
                    advanced = True
                    break
            if not advanced:
                stack.pop()
                if edges:
                    edges.pop()
                onpath.pop()


def _simple_paths(graph: NeighborGraph, s) -> Iterator[tuple]:
    """All simple paths out of s as edge tuples, the empty path first,
    DFS order, capped."""
    count = 0
    yield ()
    stack = [(s, iter(graph.out_edges(s)))]
    onpath = [s]
    edges: list = []
    while stack:
        node, it = stack[-1]
        advanced = False
        for e in it:
            tgt = e[2]
            if tgt not in onpath and tgt in graph.edges:
                edges.append(e)
                onpath.append(tgt)
                stack.append((tgt, iter(graph.out_edges(tgt))))
                count += 1
                yield tuple(edges)
                if count >= MAX_PATHS:
                    return
                advanced = True
                break
        if not advanced:
            stack.pop()
            if edges:
                edges.pop()
            onpath.pop()


def classify_intersection(graph: NeighborGraph, s) -> IntersectionClass:
    """Decide whether T and T+s share no point, one point, or at least two.

    Unknown is a value, not an error: it reports that every enumerated
    eventually periodic walk evaluates to the same point even though the
    walk structure admits several walks.
    """
    ts = graph.system
    s = tuple(s)
    if s not in graph.edges:
        return IntersectionClass(tag=EMPTY)
    reach = graph.reachable_from(s)
    if all(len(graph.out_edges(v)) == 1 for v in reach):
        pre, cyc = _unique_walk_edges(graph, s)
        w = _walk_witness(ts, s, pre, cyc)
        return IntersectionClass(tag=SINGLE, point=w.point, address=w.address)

    cycles_at: dict = {}
    truncated = False
    ncycles = 0
    for cyc in _simple_cycles(graph, reach):
        ncycles += 1
        for rot in range(len(cyc)):
            u = cyc[rot - 1][2]  # target of previous edge = start of rotation
            cycles_at.setdefault(u, []).append(cyc[rot:] + cyc[:rot])
    if ncycles >= MAX_CYCLES:
        truncated = True

    found: list[Witness] = []
    values: set = set()
    npaths = 0
    for path in _simple_paths(graph, s):
        npaths += 1
        end = path[-1][2] if path else s
        for cyc in cycles_at.get(end, ()):
            w = _walk_witness(ts, s, path, cyc)
            if w.point not in values:
                values.add(w.point)
                found.append(w)
            if len(found) >= 2:
                return IntersectionClass(tag=AT_LEAST_TWO, witnesses=tuple(found[:2]))
    if npaths >= MAX_PATHS:
        truncated = True
    diag = "enumeration caps reached" if truncated else (
        "all enumerated periodic walks evaluate to the same point"
    )
    return IntersectionClass(tag=UNKNOWN, witnesses=tuple(found), diagnostic=diag)


def classify_all(graph: NeighborGraph) -> dict:
    """Classification for every s in S, in sorted vector order."""
    return {s: classify_intersection(graph, s) for s in graph.neighbors}


def e_criterion_holds(classes: dict) -> bool:
    """True when no translate meets the tile in exactly one point: then
    either the tile has a cut point or every irreducible cut set of it is
    a perfect set."""
    return all(c.tag != SINGLE for c in classes.values())


def single_point_translates(ts: TileSystem, graph: NeighborGraph | None = None):
    """All (s, point) with intersection exactly one point: the generators of
    the exceptional set (their images under A^-k plus lattice shifts are
    implied, not enumerated)."""
    if graph is None:
        graph = neighbor_graph(ts)
    out = []
    for s in graph.neighbors:
        c = classify_intersection(graph, s)
        if c.tag == SINGLE:
            out.append((s, c.point))
    return out
