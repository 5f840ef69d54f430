"""Immutable simple graphs and the exact set queries the algorithms rely on.

Vertex sets cross the public API as ``frozenset``s of ints; internally they
are Python-int bitmasks (bit ``v`` set iff vertex ``v`` is a member).  Every
"pick any" choice in the package is resolved by ascending vertex id.
"""

from __future__ import annotations

from collections.abc import Iterable, Iterator

import numpy as np

from . import _kernels
from .errors import InvalidVertexSetError, PreconditionError

VertexSet = frozenset


def iter_bits(mask: int) -> Iterator[int]:
    """Yield the set bits of ``mask`` in ascending order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def popcount(mask: int) -> int:
    return bin(mask).count("1")


def from_mask(mask: int) -> frozenset[int]:
    return frozenset(iter_bits(mask))


def sorted_members(mask: int) -> list[int]:
    return list(iter_bits(mask))


class Graph:
    """Undirected simple graph on vertices ``0..n-1``.

    Instances are immutable and hashable; the independence-number cache is an
    implementation detail and never changes observable results.
    """

    __slots__ = ("_n", "_edges", "_adj", "_adj64", "_comp", "_comp64", "_alpha_cache")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]] = ()):
        if n < 0:
            raise ValueError("vertex count must be non-negative")
        adj = [0] * n
        canon = set()
        for u, v in edges:
            u, v = int(u), int(v)
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) out of range for n={n}")
            if u > v:
                u, v = v, u
            canon.add((u, v))
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        self._n = n
        self._edges = frozenset(canon)
        self._adj = tuple(adj)
        full = (1 << n) - 1
        self._comp = tuple((~adj[v] & full) & ~(1 << v) for v in range(n))
        if n <= 64:
            self._adj64 = np.array(adj, dtype=np.uint64)
            self._comp64 = np.array(self._comp, dtype=np.uint64)
        else:
            self._adj64 = None
            self._comp64 = None
        self._alpha_cache: dict[int, int] = {}

    # -- construction helpers ---------------------------------------------
    @classmethod
    def from_adjacency(cls, rows: Iterable[int]) -> Graph:
        rows = list(rows)
        return cls(len(rows), ((u, v) for u, r in enumerate(rows) for v in iter_bits(r) if u < v))

    @classmethod
    def complete(cls, n: int) -> Graph:
        return cls(n, ((u, v) for u in range(n) for v in range(u + 1, n)))

    @classmethod
    def edgeless(cls, n: int) -> Graph:
        return cls(n)

    @classmethod
    def cycle(cls, n: int) -> Graph:
        if n < 3:
            raise ValueError("a cycle needs at least 3 vertices")
        return cls(n, ((i, (i + 1) % n) for i in range(n)))

    @classmethod
    def path(cls, n: int) -> Graph:
        return cls(n, ((i, i + 1) for i in range(n - 1)))

    @classmethod
    def petersen(cls) -> Graph:
        outer = [(i, (i + 1) % 5) for i in range(5)]
        spokes = [(i, i + 5) for i in range(5)]
        inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
        return cls(10, outer + spokes + inner)

    # -- basic queries ----------------------------------------------------
    @property
    def n(self) -> int:
        return self._n

    @property
    def edges(self) -> frozenset[tuple[int, int]]:
        return self._edges

    @property
    def m(self) -> int:
        return len(self._edges)

    @property
    def adj(self) -> tuple[int, ...]:
        """Neighbourhood bitmask of every vertex."""
        return self._adj

    @property
    def full_mask(self) -> int:
        return (1 << self._n) - 1

    def neighbors(self, v: int) -> frozenset[int]:
        return from_mask(self._adj[v])

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self._adj[u] >> v & 1)

    def degree(self, v: int) -> int:
        return popcount(self._adj[v])

    def sorted_edges(self) -> list[tuple[int, int]]:
        return sorted(self._edges)

    def complement(self) -> Graph:
        return Graph.from_adjacency(self._comp)

    def mask(self, s: Iterable[int] | int | None) -> int:
        """Bitmask of ``s`` after validating it against this graph."""
        if s is None:
            return self.full_mask
        if isinstance(s, int):
            if s < 0 or s >> self._n:
                raise InvalidVertexSetError(f"mask has bits outside 0..{self._n - 1}")
            return s
        m = 0
        for v in s:
            if not (0 <= v < self._n):
                raise InvalidVertexSetError(f"vertex {v} not in 0..{self._n - 1}")
            m |= 1 << v
        return m

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self._n == other._n and self._edges == other._edges

    def __hash__(self) -> int:
        return hash((self._n, self._edges))

    def __repr__(self) -> str:
        return f"Graph(n={self._n}, m={len(self._edges)})"

    def __getstate__(self):
        return (self._n, sorted(self._edges))

    def __setstate__(self, state):
        n, edges = state
        Graph.__init__(self, n, edges)


# ---------------------------------------------------------------------------
# mask-level primitives (used by the algorithms on their hot paths)

def neighborhood_of(rows, mask: int) -> int:
    out = 0
    for v in iter_bits(mask):
        out |= rows[v]
    return out


def components_of(rows, mask: int) -> list[int]:
    """Connected components of the subgraph of ``rows`` induced on ``mask``.

    Ordered by smallest contained vertex.
    """
    comps = []
    rest = mask
    while rest:
        comp = frontier = rest & -rest
        while frontier:
            grow = neighborhood_of(rows, frontier) & rest & ~comp
            comp |= grow
            frontier = grow
        comps.append(comp)
        rest &= ~comp
    return comps


def is_connected_mask(rows, mask: int) -> bool:
    if not mask:
        return False
    return len(components_of(rows, mask)) == 1


def alpha_mask(g: Graph, mask: int) -> int:
    cache = g._alpha_cache
    hit = cache.get(mask)
    if hit is not None:
        return hit
    if mask == 0:
        val = 0
    elif mask & (mask - 1) == 0:
        val = 1
    else:
        val = _kernels.clique_size(g._comp, mask, g._comp64)
    cache[mask] = val
    return val


def mis_mask(g: Graph, mask: int) -> int:
    """Lexicographically smallest maximum independent set of ``g[mask]``."""
    need = alpha_mask(g, mask)
    chosen = 0
    avail = mask
    adj = g._adj
    while need:
        for v in iter_bits(avail):
            rest = avail & ~adj[v] & ~((2 << v) - 1)
            if 1 + alpha_mask(g, rest) == need:
                chosen |= 1 << v
                avail = rest
                need -= 1
                break
        else:  # pragma: no cover - alpha_mask guarantees a candidate
            raise AssertionError("no vertex extends to a maximum independent set")
    return chosen


def is_independent_mask(g: Graph, mask: int) -> bool:
    return all(not (g._adj[v] & mask) for v in iter_bits(mask))


def greedy_maximal_mask(g: Graph, mask: int, seed: int) -> int:
    chosen = seed
    blocked = neighborhood_of(g._adj, seed)
    for v in iter_bits(mask & ~seed):
        if not (blocked >> v & 1):
            chosen |= 1 << v
            blocked |= g._adj[v]
    return chosen


# ---------------------------------------------------------------------------
# public set API

def induced_subgraph(g: Graph, s: Iterable[int]) -> tuple[Graph, tuple[int, ...]]:
    """``g[s]`` relabelled to ``0..|s|-1`` plus the map back to ``g``'s ids."""
    mask = g.mask(s)
    back = tuple(iter_bits(mask))
    index = {v: i for i, v in enumerate(back)}
    edges = [(index[u], index[v]) for u, v in g.edges if u in index and v in index]
    return Graph(len(back), edges), back


def components(g: Graph, s: Iterable[int]) -> list[frozenset[int]]:
    return [from_mask(c) for c in components_of(g.adj, g.mask(s))]


def neighborhood(g: Graph, s: Iterable[int]) -> frozenset[int]:
    """Union of the open neighbourhoods of ``s`` (may intersect ``s``)."""
    return from_mask(neighborhood_of(g.adj, g.mask(s)))


def alpha(g: Graph, s: Iterable[int] | None = None) -> int:
    """Exact independence number of ``g[s]`` (all of ``g`` when ``s`` is None)."""
    return alpha_mask(g, g.mask(s))


def max_independent_set(g: Graph, s: Iterable[int] | None = None) -> frozenset[int]:
    return from_mask(mis_mask(g, g.mask(s)))


def extend_to_maximal_independent(g: Graph, s: Iterable[int], i0: Iterable[int]) -> frozenset[int]:
    """Grow ``i0`` greedily (ascending ids) to a maximal independent set of ``g[s]``."""
    smask = g.mask(s)
    imask = g.mask(i0)
    if imask & ~smask:
        raise PreconditionError("i0 is not contained in s")
    if not is_independent_mask(g, imask):
        raise PreconditionError("i0 is not independent")
    return from_mask(greedy_maximal_mask(g, smask, imask))
