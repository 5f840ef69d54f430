"""Contracting the family, elimination orderings, and chordal clique extraction."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import PreconditionError, SizeLimitError
from .graph import Graph, components_of, from_mask, iter_bits, neighborhood_of, popcount

WEIGHTED_ALPHA_CAP = 22


@dataclass(frozen=True)
class ContractionMap:
    h: Graph
    origin: tuple[frozenset[int], ...]

    def preimage(self, vertices) -> list[frozenset[int]]:
        return [self.origin[v] for v in sorted(vertices)]


@dataclass(frozen=True)
class EliminationOrder:
    """Vertices in visit order; each vertex's earlier neighbours form a clique."""

    order: tuple[int, ...]


@dataclass(frozen=True)
class PseoVerdict:
    ok: bool
    witness: tuple | None = None


@dataclass(frozen=True)
class ChordalVerdict:
    ok: bool
    order: EliminationOrder | None = None
    hole: tuple[int, ...] | None = None


def _red_rows(g: Graph, red) -> list[int]:
    rows = [0] * g.n
    for u, v in red:
        if not g.has_edge(u, v):
            raise PreconditionError(f"red pair ({u}, {v}) is not an edge")
        rows[u] |= 1 << v
        rows[v] |= 1 << u
    return rows


def _blue_rows(g: Graph, red) -> list[int]:
    return [a & ~r for a, r in zip(g.adj, _red_rows(g, red))]


def _family_masks(g: Graph, fam) -> list[int]:
    out = []
    for t in fam:
        out.append(t.mask if hasattr(t, "mask") else g.mask(t))
    return out


def contract_family(g: Graph, red, fam) -> ContractionMap:
    """Contract every family set of the blue subgraph to one vertex.

    ``red`` is an iterable of red edges; ``fam`` a sequence of vertex sets (or
    objects with a ``mask``) that must partition ``V(g)`` into blue-connected
    sets.
    """
    masks = _family_masks(g, fam)
    seen = 0
    for i, m in enumerate(masks):
        if not m:
            raise PreconditionError(f"family set {i} is empty")
        if m & seen:
            raise PreconditionError(f"family set {i} overlaps an earlier set")
        seen |= m
    if seen != g.full_mask:
        raise PreconditionError("family does not cover every vertex")
    blue = _blue_rows(g, red)
    edges = []
    for i, m in enumerate(masks):
        if len(components_of(blue, m)) != 1:
            raise PreconditionError(f"family set {i} is not blue-connected")
        reach = neighborhood_of(blue, m)
        for j in range(i + 1, len(masks)):
            if reach & masks[j]:
                edges.append((i, j))
    return ContractionMap(Graph(len(masks), edges), tuple(from_mask(m) for m in masks))


def is_pseo(g: Graph, red, fam) -> PseoVerdict:
    """Check the partial simplicial elimination property of an ordered family.

    The witness on failure is ``(i, j, C)``: positions of the non-touching
    pair and the residual component both of them touch.
    """
    masks = _family_masks(g, fam)
    blue = _blue_rows(g, red)
    reach = [neighborhood_of(blue, m) | m for m in masks]
    removed = 0
    for j, tj in enumerate(masks):
        removed |= tj
        comps = None
        for i in range(j):
            if reach[i] & tj:
                continue
            if comps is None:
                comps = components_of(blue, g.full_mask & ~removed)
            for c in comps:
                if reach[i] & c and reach[j] & c:
                    return PseoVerdict(False, (i, j, from_mask(c)))
    return PseoVerdict(True)


def mcs_order(h: Graph) -> tuple[int, ...]:
    """Maximum cardinality search; ties go to the smallest vertex id."""
    n = h.n
    weight = [0] * n
    done = 0
    order = []
    for _ in range(n):
        best, v = -1, -1
        for u in range(n):
            if not done >> u & 1 and weight[u] > best:
                best, v = weight[u], u
        order.append(v)
        done |= 1 << v
        for u in iter_bits(h.adj[v] & ~done):
            weight[u] += 1
    return tuple(order)


def _order_violation(h: Graph, order) -> tuple[int, int, int] | None:
    """First ``(v, x, y)`` with ``x, y`` earlier non-adjacent neighbours of ``v``."""
    before = 0
    for v in order:
        earlier = h.adj[v] & before
        for x in iter_bits(earlier):
            missing = earlier & ~h.adj[x] & ~(1 << x)
            if missing:
                return v, x, (missing & -missing).bit_length() - 1
        before |= 1 << v
    return None


def find_hole(h: Graph) -> tuple[int, ...] | None:
    """An induced cycle of length at least 4, or None if ``h`` is chordal."""
    adj = h.adj
    for v in range(h.n):
        nv = adj[v]
        for x in iter_bits(nv):
            for y in iter_bits(nv & ~adj[x] & ~((2 << x) - 1)):
                allowed = h.full_mask & ~(nv | 1 << v) | (1 << x) | (1 << y)
                path = _bfs_path(adj, allowed, x, y)
                if path is not None:
                    return (v, *path)
    return None


def _bfs_path(adj, allowed: int, s: int, t: int) -> list[int] | None:
    parent = {s: s}
    frontier = [s]
    while frontier:
        nxt = []
        for u in frontier:
            for w in iter_bits(adj[u] & allowed):
                if w not in parent:
                    parent[w] = u
                    if w == t:
                        path = [t]
                        while path[-1] != s:
                            path.append(parent[path[-1]])
                        return path[::-1]
                    nxt.append(w)
        frontier = nxt
    return None


def is_chordal(h: Graph) -> ChordalVerdict:
    order = mcs_order(h)
    if _order_violation(h, order) is None:
        return ChordalVerdict(True, order=EliminationOrder(order))
    hole = find_hole(h)
    if hole is None:  # pragma: no cover - MCS is exact on chordal graphs
        raise AssertionError("elimination check failed but no hole exists")
    return ChordalVerdict(False, hole=hole)


def max_clique_chordal(h: Graph, order: EliminationOrder | None = None) -> frozenset[int]:
    """A maximum clique of a chordal graph from a simplicial elimination order."""
    if order is None:
        verdict = is_chordal(h)
        if not verdict.ok:
            raise PreconditionError(f"graph is not chordal (hole {verdict.hole})")
        order = verdict.order
    seq = order.order
    if sorted(seq) != list(range(h.n)):
        raise PreconditionError("order is not a permutation of the vertices")
    bad = _order_violation(h, seq)
    if bad is not None:
        raise PreconditionError(f"not a simplicial elimination order at vertex {bad[0]}")
    best = 0
    before = 0
    for v in seq:
        cand = (h.adj[v] & before) | (1 << v)
        if popcount(cand) > popcount(best):
            best = cand
        before |= 1 << v
    return from_mask(best)


def alpha_weighted_bruteforce(h: Graph, w, cap: int = WEIGHTED_ALPHA_CAP) -> Fraction:
    """Maximum total weight of an independent set, by pruned enumeration."""
    n = h.n
    if n > cap:
        raise SizeLimitError(f"{n} vertices exceeds the weighted-alpha cap of {cap}")
    weights = [Fraction(x) for x in w]
    if len(weights) != n:
        raise ValueError("one weight per vertex required")
    if any(x <= 0 for x in weights):
        raise ValueError("weights must be positive")
    adj = h.adj
    best = Fraction(0)

    def go(cand: int, acc: Fraction) -> None:
        nonlocal best
        if acc + sum(weights[v] for v in iter_bits(cand)) <= best:
            return
        if not cand:
            best = acc
            return
        v = (cand & -cand).bit_length() - 1
        go(cand & ~adj[v] & ~(1 << v), acc + weights[v])
        go(cand & ~(1 << v), acc)

    go(h.full_mask, Fraction(0))
    return best


def perfect_weight_bound(h: Graph, w, cap: int = WEIGHTED_ALPHA_CAP) -> int:
    """``ceil(w(V) / alpha_w(h))``, a lower bound on the clique number of a perfect graph."""
    if not is_chordal(h).ok:
        raise PreconditionError("weight bound needs a chordal graph")
    if h.n == 0:
        return 0
    total = sum(Fraction(x) for x in w)
    return math.ceil(total / alpha_weighted_bruteforce(h, w, cap))
