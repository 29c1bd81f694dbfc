"""Hot integer kernels for level-n graph work, with two interchangeable
implementations: numba @njit loops and a pure-numpy fallback.

Selection is controlled by the environment variable TILECUT_NUMBA:
"1"/"true" forces the jit path, "0"/"false" forces numpy, unset picks numba
when it imports cleanly. Both paths operate on int64 arrays whose magnitude
bounds were certified exactly beforehand, so results are exact; they must
agree bit for bit and the test suite checks that.

Vertices of a level are identified with their lexicographic word rank.
Values are packed into single int64 keys over a widened bounding box so
that "value minus neighbor offset" stays collision-free inside the box.
"""

from __future__ import annotations

import os

import numpy as np

_flag = os.environ.get("TILECUT_NUMBA", "").strip().lower()
if _flag in ("0", "false", "off", "no"):
    HAVE_NUMBA = False
elif _flag in ("1", "true", "on", "yes"):
    from numba import njit  # let the ImportError surface: the user asked

    HAVE_NUMBA = True
else:
    try:
        from numba import njit

        HAVE_NUMBA = True
    except ImportError:
        HAVE_NUMBA = False


def build_level_values(matrix: np.ndarray, digits: np.ndarray, n: int) -> np.ndarray:
    """Values of all |D|^n level-n words in word-rank order, int64 exact.

    Rank r at level k+1 decomposes as r = q*parent + digit, so one level
    step is a repeat of A·values plus a tile of the digit block.
    """
    q, d = digits.shape
    values = np.zeros((1, d), dtype=np.int64)
    at = matrix.T.astype(np.int64)
    for _ in range(n):
        parent = values @ at
        values = np.repeat(parent, q, axis=0) + np.tile(digits, (parent.shape[0], 1))
    return values


def pack_keys(values: np.ndarray, lo: np.ndarray, strides: np.ndarray) -> np.ndarray:
    return (values - lo) @ strides


def _component_labels_py(sorted_keys, sorted_rank, keys, skeys, active, labels):
    n = keys.shape[0]
    current = 0
    for seed in range(n):
        if not active[seed] or labels[seed] >= 0:
            continue
        labels[seed] = current
        frontier = np.array([seed], dtype=np.int64)
        while frontier.size:
            cand = (keys[frontier][:, None] - skeys[None, :]).ravel()
            idx = np.searchsorted(sorted_keys, cand)
            np.clip(idx, 0, n - 1, out=idx)
            hit = sorted_keys[idx] == cand
            w = sorted_rank[idx[hit]]
            w = w[active[w] & (labels[w] < 0)]
            w = np.unique(w)
            labels[w] = current
            frontier = w
        current += 1
    return current


if HAVE_NUMBA:

    @njit(cache=True)
    def _component_labels_nb(sorted_keys, sorted_rank, keys, skeys, active, labels):  # pragma: no cover - jit
        n = keys.shape[0]
        m = skeys.shape[0]
        stack = np.empty(n, dtype=np.int64)
        current = 0
        for seed in range(n):
            if not active[seed] or labels[seed] >= 0:
                continue
            labels[seed] = current
            top = 0
            stack[top] = seed
            top = 1
            while top > 0:
                top -= 1
                v = stack[top]
                kv = keys[v]
                for t in range(m):
                    kk = kv - skeys[t]
                    idx = np.searchsorted(sorted_keys, kk)
                    if 0 <= idx < n and sorted_keys[idx] == kk:
                        w = sorted_rank[idx]
                        if active[w] and labels[w] < 0:
                            labels[w] = current
                            stack[top] = w
                            top += 1
            current += 1
        return current


def component_labels(sorted_keys, sorted_rank, keys, skeys, active) -> tuple[np.ndarray, int]:
    """Connected-component labels of the graph 'key adjacent key - skey'.

    Only `active` vertices participate; inactive ones keep label -1. Labels
    are numbered by the smallest contained rank, identically on both paths.
    Returns (labels, count).
    """
    labels = np.full(keys.shape[0], -1, dtype=np.int64)
    if keys.shape[0] == 0:
        return labels, 0
    if skeys.shape[0] == 0:
        count = 0
        for seed in range(keys.shape[0]):
            if active[seed]:
                labels[seed] = count
                count += 1
        return labels, count
    if HAVE_NUMBA:
        count = _component_labels_nb(sorted_keys, sorted_rank, keys, skeys, active, labels)
    else:
        count = _component_labels_py(sorted_keys, sorted_rank, keys, skeys, active, labels)
    return labels, int(count)


def warmup() -> None:
    """Trigger jit compilation on tiny inputs so timed runs stay honest."""
    keys = np.array([0, 1], dtype=np.int64)
    order = np.argsort(keys).astype(np.int64)
    component_labels(keys[order], order, keys, np.array([1, -1], dtype=np.int64),
                     np.ones(2, dtype=np.bool_))
