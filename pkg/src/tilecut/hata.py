"""Level-n subdivision graphs in lattice representation.

A level-n vertex is a length-n digit word, identified with its rank in
lexicographic (digit-order) enumeration; its lattice value is
sum_k A^k d_k with the most significant digit first. Two vertices are
adjacent exactly when their value difference lies in the neighbor set S.

Graph searches run on int64 kernel arrays whenever an exactly certified
magnitude bound shows that is safe, otherwise on Python big ints. The env
flag TILECUT_NUMBA picks between the jit and numpy kernel paths.
"""

from __future__ import annotations

import os
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from . import exact, kernels
from .errors import BudgetExceeded, MixedLevels, NotAPartition, ValueCollision
from .neighbors import neighbor_set
from .system import TileSystem

DEFAULT_BUDGET = 10**7
INT64_SAFE = 2**62

Word = tuple[int, ...]  # digit indices, most significant first


def vertex_budget() -> int:
    raw = os.environ.get("TILECUT_BUDGET", "")
    if raw.strip():
        return int(raw)
    return DEFAULT_BUDGET


def word_rank(word: Word, q: int) -> int:
    r = 0
    for i in word:
        r = r * q + i
    return r


def rank_word(rank: int, n: int, q: int) -> Word:
    out = [0] * n
    for pos in range(n - 1, -1, -1):
        rank, out[pos] = divmod(rank, q)
    return tuple(out)


def _value_interval_bounds(ts: TileSystem, n: int) -> tuple[list[int], list[int], int]:
    """Exact per-coordinate enclosures of all level-k values for k <= n,
    via big-int interval arithmetic. Returns (lo, hi, max_magnitude)."""
    d = ts.dim
    lo = [0] * d
    hi = [0] * d
    dlo = [min(dig[i] for dig in ts.digits) for i in range(d)]
    dhi = [max(dig[i] for dig in ts.digits) for i in range(d)]
    maxmag = 0
    for _ in range(n):
        nlo, nhi = [], []
        for i in range(d):
            s_lo = s_hi = 0
            for j in range(d):
                a = ts.matrix[i][j]
                x, y = a * lo[j], a * hi[j]
                s_lo += min(x, y)
                s_hi += max(x, y)
            nlo.append(s_lo + dlo[i])
            nhi.append(s_hi + dhi[i])
        lo, hi = nlo, nhi
        maxmag = max(maxmag, *(abs(x) for x in lo), *(abs(x) for x in hi))
    return lo, hi, maxmag


@dataclass
class HataLevel:
    """Vertices of G_n with value cache and S-difference adjacency."""

    system: TileSystem
    n: int
    neighbors: frozenset[exact.IntVector]
    _sorted_neighbors: list[exact.IntVector] = field(default_factory=list, repr=False)
    # kernel-path arrays (int64) when safe, else big-int fallback tables
    _values: np.ndarray | None = field(default=None, repr=False)
    _keys: np.ndarray | None = field(default=None, repr=False)
    _sorted_keys: np.ndarray | None = field(default=None, repr=False)
    _sorted_rank: np.ndarray | None = field(default=None, repr=False)
    _skeys: np.ndarray | None = field(default=None, repr=False)
    _pack_lo: np.ndarray | None = field(default=None, repr=False)
    _pack_strides: np.ndarray | None = field(default=None, repr=False)
    _range_lo: list[int] | None = field(default=None, repr=False)
    _range_hi: list[int] | None = field(default=None, repr=False)
    _py_values: list[exact.IntVector] | None = field(default=None, repr=False)
    _py_index: dict[exact.IntVector, int] | None = field(default=None, repr=False)

    @property
    def q(self) -> int:
        return self.system.ndigits

    @property
    def size(self) -> int:
        return self.q**self.n

    @property
    def uses_kernels(self) -> bool:
        return self._values is not None

    def value(self, rank: int) -> exact.IntVector:
        if self._py_values is not None:
            return self._py_values[rank]
        return tuple(int(x) for x in self._values[rank])

    def word(self, rank: int) -> Word:
        return rank_word(rank, self.n, self.q)

    def rank(self, word: Word) -> int:
        if len(word) != self.n:
            raise MixedLevels(f"word {word} is not at level {self.n}")
        return word_rank(word, self.q)

    def rank_of_value(self, value: exact.IntVector) -> int | None:
        if self._py_index is not None:
            return self._py_index.get(value)
        key = 0
        arr_lo = self._pack_lo
        strides = self._pack_strides
        for i, x in enumerate(value):
            if not (self._range_lo[i] <= x <= self._range_hi[i]):
                return None
            key += (x - arr_lo[i]) * strides[i]
        idx = int(np.searchsorted(self._sorted_keys, key))
        if idx < self._sorted_keys.shape[0] and int(self._sorted_keys[idx]) == key:
            return int(self._sorted_rank[idx])
        return None

    def neighbor_ranks(self, rank: int) -> list[int]:
        """Adjacent vertices by hashed difference lookup, ascending."""
        out = []
        v = self.value(rank)
        for s in self._sorted_neighbors:
            r = self.rank_of_value(exact.vec_sub(v, s))
            if r is not None:
                out.append(r)
        return sorted(out)

    def adjacent(self, r1: int, r2: int) -> bool:
        if r1 == r2:
            return False
        return exact.vec_sub(self.value(r1), self.value(r2)) in self.neighbors

    def component_labels(self, active_mask: np.ndarray) -> tuple[np.ndarray, int]:
        """Component ids (by smallest member rank) of the induced subgraph."""
        if self.uses_kernels:
            return kernels.component_labels(
                self._sorted_keys, self._sorted_rank, self._keys, self._skeys, active_mask
            )
        labels = np.full(self.size, -1, dtype=np.int64)
        count = 0
        for seed in range(self.size):
            if not active_mask[seed] or labels[seed] >= 0:
                continue
            labels[seed] = count
            queue = deque([seed])
            while queue:
                v = queue.popleft()
                for w in self.neighbor_ranks(v):
                    if active_mask[w] and labels[w] < 0:
                        labels[w] = count
                        queue.append(w)
            count += 1
        return labels, count

    def edges(self) -> Iterable[tuple[int, int]]:
        """Undirected edge list (r1 < r2), deterministic order."""
        for r in range(self.size):
            for w in self.neighbor_ranks(r):
                if w > r:
                    yield (r, w)

    def to_dot(self, partition: "Partition | None" = None) -> str:
        colors = {}
        if partition is not None:
            for w in partition.w1:
                colors[self.rank(w)] = "lightblue"
            for w in partition.w2:
                colors[self.rank(w)] = "red"
            for w in partition.w3:
                colors[self.rank(w)] = "lightgreen"
        lines = [f"graph hata_level_{self.n} {{"]
        for r in range(self.size):
            label = "".join(str(i) for i in self.word(r)) if self.n else "e"
            style = f' style=filled fillcolor={colors[r]}' if r in colors else ""
            lines.append(f'  v{r} [label="{label}"{style}];')
        for r1, r2 in self.edges():
            lines.append(f"  v{r1} -- v{r2};")
        lines.append("}")
        return "\n".join(lines) + "\n"


def level_vertices(
    ts: TileSystem,
    n: int,
    neighbors: Iterable[exact.IntVector] | None = None,
    budget: int | None = None,
) -> HataLevel:
    """Build G_n's vertex set with exact values.

    |D|^n must stay within the vertex budget (TILECUT_BUDGET or 10^7).
    The kernel path is taken when certified magnitude bounds fit int64.
    """
    if n < 0:
        raise ValueError("level must be >= 0")
    if budget is None:
        budget = vertex_budget()
    if ts.ndigits**n > budget:
        raise BudgetExceeded(
            f"|D|^n = {ts.ndigits ** n} exceeds the vertex budget {budget}"
        )
    if neighbors is None:
        neighbors = neighbor_set(ts)
    nb = frozenset(tuple(v) for v in neighbors)
    level = HataLevel(system=ts, n=n, neighbors=nb)
    level._sorted_neighbors = sorted(nb)
    lo, hi, maxmag = _value_interval_bounds(ts, n)
    d = ts.dim
    smax = [max((abs(s[i]) for s in nb), default=0) for i in range(d)]
    wide_lo = [lo[i] - smax[i] for i in range(d)]
    wide_hi = [hi[i] + smax[i] for i in range(d)]
    span = 1
    for i in range(d):
        span *= wide_hi[i] - wide_lo[i] + 1
    maxa = max(abs(x) for row in ts.matrix for x in row)
    maxd = max((abs(x) for dig in ts.digits for x in dig), default=0)
    kernel_safe = span < INT64_SAFE and d * maxa * maxmag + maxd < INT64_SAFE
    if kernel_safe:
        matrix = np.array(ts.matrix, dtype=np.int64)
        digits = np.array(ts.digits, dtype=np.int64)
        values = kernels.build_level_values(matrix, digits, n)
        strides = np.empty(d, dtype=np.int64)
        acc = 1
        for i in range(d - 1, -1, -1):
            strides[i] = acc
            acc *= wide_hi[i] - wide_lo[i] + 1
        lo_arr = np.array(wide_lo, dtype=np.int64)
        keys = kernels.pack_keys(values, lo_arr, strides)
        sorted_rank = np.argsort(keys, kind="stable").astype(np.int64)
        sorted_keys = keys[sorted_rank]
        if np.any(sorted_keys[1:] == sorted_keys[:-1]):
            raise ValueCollision(
                f"level-{n} words are not value-injective for this digit set"
            )
        skeys = np.array(
            [sum(s[i] * int(strides[i]) for i in range(d)) for s in level._sorted_neighbors],
            dtype=np.int64,
        )
        level._values = values
        level._keys = keys
        level._sorted_keys = sorted_keys
        level._sorted_rank = sorted_rank
        level._skeys = skeys
        level._pack_lo = lo_arr
        level._pack_strides = strides
        level._range_lo = wide_lo
        level._range_hi = wide_hi
    else:
        values: list[exact.IntVector] = [(0,) * d]
        for _ in range(n):
            values = [
                exact.vec_add(exact.mat_vec(ts.matrix, v), dig)
                for v in values
                for dig in ts.digits
            ]
        index: dict[exact.IntVector, int] = {}
        for r, v in enumerate(values):
            if v in index:
                raise ValueCollision(
                    f"level-{n} words are not value-injective for this digit set"
                )
            index[v] = r
        level._py_values = values
        level._py_index = index
    return level


def is_connected(ts: TileSystem, neighbors: Iterable[exact.IntVector] | None = None) -> bool:
    """Hata's criterion: the attractor is connected iff G_1 is connected."""
    level = level_vertices(ts, 1, neighbors=neighbors)
    mask = np.ones(level.size, dtype=np.bool_)
    _, count = level.component_labels(mask)
    return count <= 1


def children(ts: TileSystem, words: Iterable[Word]) -> set[Word]:
    """One subdivision step: every word extended by every digit."""
    words = set(words)
    if not words:
        return set()
    lengths = {len(w) for w in words}
    if len(lengths) != 1:
        raise MixedLevels(f"words at mixed levels {sorted(lengths)}")
    q = ts.ndigits
    return {w + (j,) for w in words for j in range(q)}


@dataclass(frozen=True)
class Partition:
    """Three disjoint word sets; the middle one is the candidate separator."""

    w1: frozenset[Word]
    w2: frozenset[Word]
    w3: frozenset[Word]

    @staticmethod
    def of(w1, w2, w3) -> "Partition":
        return Partition(frozenset(map(tuple, w1)), frozenset(map(tuple, w2)),
                         frozenset(map(tuple, w3)))

    def check_disjoint(self):
        if self.w1 & self.w2 or self.w1 & self.w3 or self.w2 & self.w3:
            raise NotAPartition("the three word sets overlap")


def _mask_of(level: HataLevel, words: Iterable[Word]) -> np.ndarray:
    mask = np.zeros(level.size, dtype=np.bool_)
    for w in words:
        mask[level.rank(w)] = True
    return mask


def separates(level: HataLevel, partition: Partition) -> bool:
    """True iff W2 induces a connected subgraph and removing it leaves no
    path between W1 and W3."""
    partition.check_disjoint()
    total = len(partition.w1) + len(partition.w2) + len(partition.w3)
    if total != level.size:
        raise NotAPartition(
            f"partition covers {total} of {level.size} level-{level.n} vertices"
        )
    m2 = _mask_of(level, partition.w2)
    if m2.any():
        _, count = level.component_labels(m2)
        if count > 1:
            return False
    labels, _ = level.component_labels(~m2)
    l1 = {int(labels[level.rank(w)]) for w in partition.w1}
    l3 = {int(labels[level.rank(w)]) for w in partition.w3}
    return not (l1 & l3)


def components_without(level: HataLevel, removed: Iterable[Word]) -> list[set[Word]]:
    """Connected components of G_n minus the given words, ordered by their
    smallest word."""
    mask = ~_mask_of(level, removed)
    labels, count = level.component_labels(mask)
    comps: list[set[Word]] = [set() for _ in range(count)]
    for r in np.flatnonzero(labels >= 0):
        comps[int(labels[r])].add(level.word(int(r)))
    return comps
