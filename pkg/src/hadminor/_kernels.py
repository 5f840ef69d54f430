"""Bitset branch-and-bound kernels.

Both searches are the colour-bounded maximum clique scheme (greedy colour
classes give the upper bound, vertices are expanded from the highest colour
down).  Each kernel has a numba build and a plain-Python build over Python
ints; set ``HADMINOR_NUMBA=0`` to force the Python path.  The two paths
visit the search tree in the same order, so they return the same clique.
"""

from __future__ import annotations

import os

import numpy as np

try:
    import numba
except ImportError:  # pragma: no cover - numba is a declared dependency
    numba = None

USE_NUMBA = numba is not None and os.environ.get("HADMINOR_NUMBA", "1") != "0"

ONE = np.uint64(1)
_DEBRUIJN = np.uint64(0x03F79D71B4CB0A89)
_DEBRUIJN_TABLE = np.array(
    [0, 1, 48, 2, 57, 49, 28, 3, 61, 58, 50, 42, 38, 29, 17, 4,
     62, 55, 59, 36, 53, 51, 43, 22, 45, 39, 33, 30, 24, 18, 12, 5,
     63, 47, 56, 27, 60, 41, 37, 16, 54, 35, 52, 21, 44, 32, 23, 11,
     46, 26, 40, 15, 34, 20, 31, 10, 25, 14, 19, 9, 13, 8, 7, 6],
    dtype=np.int64,
)


class BudgetExceeded(RuntimeError):
    """Raised when a clique search visits more nodes than it was allowed."""


# ---------------------------------------------------------------------------
# pure-Python path

def _color_sort_py(adj, cand):
    order = []
    colors = []
    k = 0
    rest = cand
    while rest:
        k += 1
        q = rest
        while q:
            low = q & -q
            v = low.bit_length() - 1
            rest &= ~low
            q &= ~low & ~adj[v]
            order.append(v)
            colors.append(k)
    return order, colors


def clique64_py(adj, cand: int) -> int:
    """Maximum clique size inside ``cand``; ``adj`` is a list of int masks."""
    best = 0

    def expand(size, p):
        nonlocal best
        order, colors = _color_sort_py(adj, p)
        for i in range(len(order) - 1, -1, -1):
            if size + colors[i] <= best:
                return
            v = order[i]
            newp = p & adj[v]
            p &= ~(1 << v)
            if newp == 0:
                if size + 1 > best:
                    best = size + 1
            else:
                expand(size + 1, newp)

    if cand:
        expand(0, cand)
    return best


def clique_words_py(adj_int, budget: int):
    """Maximum clique of a graph given as a list of Python-int rows.

    Returns ``(members, nodes)`` with members in discovery order.
    """
    n = len(adj_int)
    best: list[int] = []
    current: list[int] = []
    nodes = 0

    def expand(p):
        nonlocal best, nodes
        nodes += 1
        if nodes > budget:
            raise BudgetExceeded(nodes)
        order, colors = _color_sort_py(adj_int, p)
        size = len(current)
        for i in range(len(order) - 1, -1, -1):
            if size + colors[i] <= len(best):
                return
            v = order[i]
            newp = p & adj_int[v]
            p &= ~(1 << v)
            current.append(v)
            if newp == 0:
                if size + 1 > len(best):
                    best = list(current)
            else:
                expand(newp)
            current.pop()

    if n:
        expand((1 << n) - 1)
    return best, nodes


def _capacity_bound_py(adj_int, p, vmask, single_items, gadj, limit=None):
    """Upper bound on how many further items fit into the host vertices of ``p``."""
    used = 0
    singles = 0
    q = p
    while q:
        low = q & -q
        i = low.bit_length() - 1
        q ^= low
        used |= vmask[i]
        if single_items >> i & 1:
            singles |= vmask[i]
    r = bin(used).count("1")
    if limit is not None:
        colors = _color_sort_py(gadj, singles)[1]
        s_cheap = colors[-1] if colors else 0
        if s_cheap + (r - s_cheap) // 3 <= limit:
            return s_cheap + (r - s_cheap) // 3
    s_max = clique64_py(gadj, singles)
    triples = p & ~single_items
    _, colors = _color_sort_py(adj_int, triples)
    t_max = colors[-1] if colors else 0
    return max(s + min(t_max, (r - s) // 3) for s in range(s_max + 1))


def packing_clique_py(adj_int, vmask, single, gadj, budget: int):
    """Maximum clique where clique members are disjoint vertex sets of a host graph.

    ``vmask[i]`` is the host-vertex mask of item ``i`` (one or three vertices),
    ``single[i]`` marks one-vertex items and ``gadj`` is the host adjacency.
    Besides the colour bound, a node is pruned when the host vertices still
    available cannot hold enough further items.
    """
    n = len(adj_int)
    single_items = sum(1 << i for i, flag in enumerate(single) if flag)
    best: list[int] = []
    current: list[int] = []
    nodes = 0

    def expand(p):
        nonlocal best, nodes
        nodes += 1
        if nodes > budget:
            raise BudgetExceeded(nodes)
        size = len(current)
        if size + _capacity_bound_py(adj_int, p, vmask, single_items, gadj, len(best) - size) <= len(best):
            return
        order, colors = _color_sort_py(adj_int, p)
        for i in range(len(order) - 1, -1, -1):
            if size + colors[i] <= len(best):
                return
            v = order[i]
            newp = p & adj_int[v]
            p &= ~(1 << v)
            current.append(v)
            if newp == 0:
                if size + 1 > len(best):
                    best = list(current)
            else:
                expand(newp)
            current.pop()

    if n:
        expand((1 << n) - 1)
    return best, nodes


# ---------------------------------------------------------------------------
# numba path

def _lowbit_index(x):
    low = x & (~x + ONE)
    return _DEBRUIJN_TABLE[(low * _DEBRUIJN) >> np.uint64(58)]


def _color_sort64(adj, cand, order, color):
    k = 0
    cnt = 0
    rest = cand
    while rest != 0:
        k += 1
        q = rest
        while q != 0:
            v = _lowbit_index(q)
            bit = ONE << np.uint64(v)
            rest &= ~bit
            q &= ~bit
            q &= ~adj[v]
            order[cnt] = v
            color[cnt] = k
            cnt += 1
    return cnt


def _clique64_nb(adj, cand):
    if cand == 0:
        return 0
    depth = 66
    p = np.zeros(depth, np.uint64)
    order = np.zeros((depth, 64), np.int64)
    color = np.zeros((depth, 64), np.int64)
    pos = np.zeros(depth, np.int64)
    best = 0
    d = 0
    p[0] = cand
    pos[0] = _color_sort64(adj, cand, order[0], color[0]) - 1
    while d >= 0:
        i = pos[d]
        if i < 0 or d + color[d, i] <= best:
            d -= 1
            continue
        v = order[d, i]
        pos[d] = i - 1
        newp = p[d] & adj[v]
        p[d] &= ~(ONE << np.uint64(v))
        if newp == 0:
            if d + 1 > best:
                best = d + 1
        else:
            d += 1
            p[d] = newp
            pos[d] = _color_sort64(adj, newp, order[d], color[d]) - 1
    return best


def _color_sort_words(adj, cand, order, color, rest, q):
    w = cand.shape[0]
    for j in range(w):
        rest[j] = cand[j]
    k = 0
    cnt = 0
    while True:
        nonempty = False
        for j in range(w):
            if rest[j] != 0:
                nonempty = True
                break
        if not nonempty:
            break
        k += 1
        for j in range(w):
            q[j] = rest[j]
        j = 0
        while j < w:
            if q[j] == 0:
                j += 1
                continue
            b = _lowbit_index(q[j])
            v = j * 64 + b
            bit = ONE << np.uint64(b)
            rest[j] &= ~bit
            q[j] &= ~bit
            for t in range(j, w):
                q[t] &= ~adj[v, t]
            order[cnt] = v
            color[cnt] = k
            cnt += 1
    return cnt


def _clique_words_nb(adj, max_depth, budget):
    n, w = adj.shape
    depth = max_depth + 2
    p = np.zeros((depth, w), np.uint64)
    order = np.zeros((depth, n), np.int64)
    color = np.zeros((depth, n), np.int64)
    pos = np.zeros(depth, np.int64)
    rest = np.zeros(w, np.uint64)
    q = np.zeros(w, np.uint64)
    newp = np.zeros(w, np.uint64)
    current = np.zeros(depth, np.int64)
    best = np.zeros(depth, np.int64)
    best_size = 0
    nodes = 0
    if n == 0:
        return best[:0], nodes, True
    for v in range(n):
        p[0, v // 64] |= ONE << np.uint64(v % 64)
    nodes += 1
    pos[0] = _color_sort_words(adj, p[0], order[0], color[0], rest, q) - 1
    d = 0
    while d >= 0:
        i = pos[d]
        if i < 0 or d + color[d, i] <= best_size:
            d -= 1
            continue
        v = order[d, i]
        pos[d] = i - 1
        empty = True
        for j in range(w):
            newp[j] = p[d, j] & adj[v, j]
            if newp[j] != 0:
                empty = False
        p[d, v // 64] &= ~(ONE << np.uint64(v % 64))
        current[d] = v
        if empty:
            if d + 1 > best_size:
                best_size = d + 1
                for t in range(d + 1):
                    best[t] = current[t]
        else:
            nodes += 1
            if nodes > budget:
                return best[:best_size], nodes, False
            d += 1
            for j in range(w):
                p[d, j] = newp[j]
            pos[d] = _color_sort_words(adj, p[d], order[d], color[d], rest, q) - 1
    return best[:best_size], nodes, True


def _capacity_bound_nb(adj, p, vmask, single, gadj, triples, order, color, rest, q, limit):
    w = p.shape[0]
    used = np.uint64(0)
    singles = np.uint64(0)
    for j in range(w):
        triples[j] = p[j]
        x = p[j]
        while x != 0:
            b = _lowbit_index(x)
            bit = ONE << np.uint64(b)
            x &= ~bit
            i = j * 64 + b
            used |= vmask[i]
            if single[i]:
                singles |= vmask[i]
                triples[j] &= ~bit
    r = 0
    while used != 0:
        used &= used - ONE
        r += 1
    s_cheap = 0
    left = singles
    while left != 0:
        s_cheap += 1
        x = left
        while x != 0:
            v = _lowbit_index(x)
            bit = ONE << np.uint64(v)
            left &= ~bit
            x &= ~bit
            x &= ~gadj[v]
    if s_cheap + (r - s_cheap) // 3 <= limit:
        return s_cheap + (r - s_cheap) // 3
    s_max = _clique64_nb(gadj, singles)
    cnt = _color_sort_words(adj, triples, order, color, rest, q)
    t_max = color[cnt - 1] if cnt > 0 else 0
    best = 0
    for s in range(s_max + 1):
        t = (r - s) // 3
        if t_max < t:
            t = t_max
        if s + t > best:
            best = s + t
    return best


def _packing_clique_nb(adj, vmask, single, gadj, max_depth, budget):
    n, w = adj.shape
    depth = max_depth + 2
    p = np.zeros((depth, w), np.uint64)
    order = np.zeros((depth, n), np.int64)
    color = np.zeros((depth, n), np.int64)
    pos = np.zeros(depth, np.int64)
    rest = np.zeros(w, np.uint64)
    q = np.zeros(w, np.uint64)
    newp = np.zeros(w, np.uint64)
    current = np.zeros(depth, np.int64)
    best = np.zeros(depth, np.int64)
    triples = np.zeros(w, np.uint64)
    s_order = np.zeros(n, np.int64)
    s_color = np.zeros(n, np.int64)
    best_size = 0
    nodes = 0
    if n == 0:
        return best[:0], nodes, True
    for v in range(n):
        p[0, v // 64] |= ONE << np.uint64(v % 64)
    nodes += 1
    pos[0] = _color_sort_words(adj, p[0], order[0], color[0], rest, q) - 1
    d = 0
    while d >= 0:
        i = pos[d]
        if i < 0 or d + color[d, i] <= best_size:
            d -= 1
            continue
        v = order[d, i]
        pos[d] = i - 1
        empty = True
        for j in range(w):
            newp[j] = p[d, j] & adj[v, j]
            if newp[j] != 0:
                empty = False
        p[d, v // 64] &= ~(ONE << np.uint64(v % 64))
        current[d] = v
        if empty:
            if d + 1 > best_size:
                best_size = d + 1
                for t in range(d + 1):
                    best[t] = current[t]
        else:
            nodes += 1
            if nodes > budget:
                return best[:best_size], nodes, False
            cap = _capacity_bound_nb(adj, newp, vmask, single, gadj, triples, s_order, s_color, rest, q, best_size - d - 1)
            if d + 1 + cap <= best_size:
                continue
            d += 1
            for j in range(w):
                p[d, j] = newp[j]
            pos[d] = _color_sort_words(adj, p[d], order[d], color[d], rest, q) - 1
    return best[:best_size], nodes, True


if USE_NUMBA:
    _jit = numba.njit(cache=True, nogil=True)
    _lowbit_index = _jit(_lowbit_index)
    _color_sort64 = _jit(_color_sort64)
    _clique64_nb = _jit(_clique64_nb)
    _color_sort_words = _jit(_color_sort_words)
    _clique_words_nb = _jit(_clique_words_nb)
    _capacity_bound_nb = _jit(_capacity_bound_nb)
    _packing_clique_nb = _jit(_packing_clique_nb)


# ---------------------------------------------------------------------------
# dispatch

def masks_to_words(rows: list[int], n: int) -> np.ndarray:
    """Pack Python-int adjacency rows into an ``(n, ceil(n/64))`` uint64 array."""
    w = max(1, (n + 63) // 64)
    out = np.zeros((n, w), dtype=np.uint64)
    for v, row in enumerate(rows):
        for j in range(w):
            out[v, j] = (row >> (64 * j)) & 0xFFFFFFFFFFFFFFFF
    return out


def clique_size(adj: list[int], cand: int, adj64: np.ndarray | None = None) -> int:
    """Size of a maximum clique of the graph ``adj`` restricted to ``cand``.

    ``adj64`` is the same adjacency as a uint64 vector; when given (and the
    graph has at most 64 vertices) the compiled kernel is used.
    """
    if USE_NUMBA and adj64 is not None:
        return int(_clique64_nb(adj64, np.uint64(cand)))
    return clique64_py(adj, cand)


def max_clique(adj: list[int], budget: int = 10**7, max_depth: int | None = None) -> list[int]:
    """A maximum clique (sorted) of an arbitrary-size graph.

    Raises :class:`BudgetExceeded` when more than ``budget`` search nodes are
    needed.
    """
    n = len(adj)
    if USE_NUMBA:
        if max_depth is None:
            max_depth = n
        members, nodes, finished = _clique_words_nb(masks_to_words(adj, n), max_depth, budget)
        if not finished:
            raise BudgetExceeded(int(nodes))
        return sorted(int(v) for v in members)
    members, _ = clique_words_py(adj, budget)
    return sorted(members)


def packing_clique(adj: list[int], vmask: list[int], single: list[bool], gadj: list[int],
                   budget: int = 10**7, max_depth: int | None = None) -> list[int]:
    """Sorted maximum clique of ``adj`` whose items pack into a host graph of
    at most 64 vertices; see :func:`packing_clique_py`."""
    n = len(adj)
    if USE_NUMBA:
        if max_depth is None:
            max_depth = n
        members, nodes, finished = _packing_clique_nb(
            masks_to_words(adj, n),
            np.array(vmask, dtype=np.uint64),
            np.array(single, dtype=np.bool_),
            np.array(gadj, dtype=np.uint64),
            max_depth,
            budget,
        )
        if not finished:
            raise BudgetExceeded(int(nodes))
        return sorted(int(v) for v in members)
    members, _ = packing_clique_py(adj, vmask, single, gadj, budget)
    return sorted(members)
