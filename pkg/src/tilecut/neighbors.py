"""Neighbor set and labeled neighbor graph of a tile system.

The neighbor set S collects all nonzero lattice translates s with
T and T+s intersecting. Candidates come from overlap of the certified
bounding box with its integer translates; pruning then deletes every
candidate from which no infinite walk s -> A s + d' - d survives. A node
admits an infinite walk exactly when the translate really intersects, so
the surviving nonzero nodes are S, with no tiling assumption needed.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass

from . import exact
from .system import RationalBox, TileSystem, bounding_box

Edge = tuple[int, int, exact.IntVector]  # (digit index d, digit index d', target)


def candidate_set(ts: TileSystem, box: RationalBox) -> set[exact.IntVector]:
    """All nonzero integer s with box and box+s overlapping.

    Per coordinate the overlap condition is |s_i| <= width_i, so the result
    is the integer lattice inside the symmetric width box, minus 0.
    """
    ranges = []
    for w in box.widths():
        m = int(w)  # floor of a nonnegative Fraction
        ranges.append(range(-m, m + 1))
    zero = (0,) * ts.dim
    return {s for s in itertools.product(*ranges) if s != zero}


def _successors(ts: TileSystem, s: exact.IntVector):
    base = exact.mat_vec(ts.matrix, s)
    for i, d in enumerate(ts.digits):
        for j, dp in enumerate(ts.digits):
            yield i, j, exact.vec_add(base, exact.vec_sub(dp, d))


def _prune(ts: TileSystem, candidates: set[exact.IntVector]) -> set[exact.IntVector]:
    """Greatest fixpoint of 'every node keeps a successor inside the set'.

    Worklist deletion with reverse-edge bookkeeping; the fixpoint is
    independent of deletion order.
    """
    zero = (0,) * ts.dim
    alive = set(candidates) | {zero}
    out_count: dict[exact.IntVector, int] = {}
    preds: dict[exact.IntVector, set[exact.IntVector]] = {v: set() for v in alive}
    for v in alive:
        n = 0
        for _, _, tgt in _successors(ts, v):
            if tgt in alive:
                n += 1
                preds[tgt].add(v)
        out_count[v] = n
    dead = deque(v for v in alive if out_count[v] == 0 and v != zero)
    while dead:
        v = dead.popleft()
        if v not in alive:
            continue
        alive.discard(v)
        for p in preds[v]:
            if p not in alive or p == zero:
                continue
            out_count[p] -= sum(1 for _, _, tgt in _successors(ts, p) if tgt == v)
            if out_count[p] <= 0:
                dead.append(p)
    return alive


@dataclass(frozen=True)
class NeighborGraph:
    """Labeled graph on S plus the zero node.

    Edges s ->(d,d')-> s' with s' = A s + d' - d and s' still a node; the
    labels are digit indices into the system's digit order. Node and edge
    order are deterministic (lexicographic vectors, then digit order).
    """

    system: TileSystem
    nodes: tuple[exact.IntVector, ...]
    edges: dict[exact.IntVector, tuple[Edge, ...]]

    @property
    def neighbors(self) -> tuple[exact.IntVector, ...]:
        zero = (0,) * self.system.dim
        return tuple(v for v in self.nodes if v != zero)

    def out_edges(self, s: exact.IntVector) -> tuple[Edge, ...]:
        return self.edges.get(s, ())

    def reachable_from(self, s: exact.IntVector) -> tuple[exact.IntVector, ...]:
        if s not in self.edges:
            return ()
        seen = {s}
        queue = deque([s])
        while queue:
            v = queue.popleft()
            for _, _, tgt in self.edges[v]:
                if tgt not in seen:
                    seen.add(tgt)
                    queue.append(tgt)
        return tuple(sorted(seen))

    def to_dot(self) -> str:
        def name(v):
            return '"' + ",".join(str(x) for x in v) + '"'

        lines = ["digraph neighbors {"]
        for v in self.nodes:
            lines.append(f"  {name(v)};")
        for v in self.nodes:
            for i, j, tgt in self.edges[v]:
                di = self.system.digits[i]
                dj = self.system.digits[j]
                lab = ",".join(map(str, di)) + "|" + ",".join(map(str, dj))
                lines.append(f'  {name(v)} -> {name(tgt)} [label="{lab}"];')
        lines.append("}")
        return "\n".join(lines) + "\n"


def neighbor_graph(ts: TileSystem, box: RationalBox | None = None) -> NeighborGraph:
    if box is None:
        box = bounding_box(ts)
    alive = _prune(ts, candidate_set(ts, box))
    nodes = tuple(sorted(alive))
    edges = {}
    for v in nodes:
        edges[v] = tuple(
            (i, j, tgt) for i, j, tgt in _successors(ts, v) if tgt in alive
        )
    return NeighborGraph(system=ts, nodes=nodes, edges=edges)


def neighbor_set(ts: TileSystem, box: RationalBox | None = None) -> set[exact.IntVector]:
    """Exactly S, the set of nonzero translates meeting the tile."""
    return set(neighbor_graph(ts, box).neighbors)
