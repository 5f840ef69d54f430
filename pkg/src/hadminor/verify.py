"""Certificate checks for complete minors and brute-force ground truth."""

from __future__ import annotations

from dataclasses import dataclass, field

from . import _kernels
from .errors import BudgetExceededError, ParameterError, SizeLimitError
from .graph import Graph, alpha_mask, components_of, is_connected_mask, iter_bits, neighborhood_of

HADWIGER_CAP = 10


@dataclass(frozen=True)
class MinorCertificate:
    branch_sets: tuple[frozenset[int], ...]
    coloring: dict[int, int] | None = None

    @classmethod
    def of(cls, sets, coloring=None) -> MinorCertificate:
        return cls(tuple(frozenset(s) for s in sets), None if coloring is None else dict(coloring))

    @property
    def size(self) -> int:
        return len(self.branch_sets)

    def to_json(self) -> dict:
        doc = {"branch_sets": [sorted(s) for s in self.branch_sets]}
        if self.coloring is not None:
            doc["coloring"] = {str(v): c for v, c in sorted(self.coloring.items())}
        return doc

    @classmethod
    def from_json(cls, doc: dict) -> MinorCertificate:
        col = doc.get("coloring")
        return cls.of(doc["branch_sets"], None if col is None else {int(v): c for v, c in col.items()})


@dataclass(frozen=True)
class Verdict:
    ok: bool
    reason: str = ""

    def __bool__(self) -> bool:
        return self.ok


def _branch_masks(g: Graph, cert: MinorCertificate) -> list[int] | Verdict:
    masks = []
    seen = 0
    for i, s in enumerate(cert.branch_sets):
        if any(not (0 <= v < g.n) for v in s):
            return Verdict(False, f"branch set {i} has a vertex outside the graph")
        m = g.mask(s)
        if not m:
            return Verdict(False, f"branch set {i} is empty")
        if m & seen:
            return Verdict(False, f"branch set {i} overlaps an earlier set")
        seen |= m
        masks.append(m)
    return masks


def verify_minor(g: Graph, cert: MinorCertificate) -> Verdict:
    """Disjoint, connected, pairwise adjacent branch sets."""
    masks = _branch_masks(g, cert)
    if isinstance(masks, Verdict):
        return masks
    for i, m in enumerate(masks):
        if not is_connected_mask(g.adj, m):
            return Verdict(False, f"branch set {i} is not connected")
    reach = [neighborhood_of(g.adj, m) for m in masks]
    for i in range(len(masks)):
        for j in range(i + 1, len(masks)):
            if not reach[i] & masks[j]:
                return Verdict(False, f"branch sets {i} and {j} are not adjacent")
    return Verdict(True)


def verify_odd_minor(g: Graph, cert: MinorCertificate) -> Verdict:
    """Complete minor whose branch sets have bichromatic spanning trees and
    whose every pair is joined by a monochromatic edge.

    A spanning tree using only bichromatic edges exists exactly when the
    bichromatic edges inside the set connect it, so that is what is checked.
    """
    if cert.coloring is None:
        raise ParameterError("odd-minor verification needs a 2-colouring")
    base = verify_minor(g, cert)
    if not base:
        return base
    masks = _branch_masks(g, cert)
    colour = [None] * g.n
    for v, c in cert.coloring.items():
        if c not in (0, 1):
            raise ParameterError(f"colour of vertex {v} must be 0 or 1")
        if 0 <= v < g.n:
            colour[v] = c
    used = 0
    for m in masks:
        used |= m
    missing = [v for v in iter_bits(used) if colour[v] is None]
    if missing:
        raise ParameterError(f"vertices {missing} have no colour")
    ones = sum(1 << v for v in iter_bits(used) if colour[v] == 1)
    zeros = used & ~ones
    bichrom = [0] * g.n
    mono = [0] * g.n
    for v in iter_bits(used):
        same = ones if colour[v] == 1 else zeros
        bichrom[v] = g.adj[v] & ~same
        mono[v] = g.adj[v] & same
    for i, m in enumerate(masks):
        if len(components_of(bichrom, m)) != 1:
            return Verdict(False, f"branch set {i} has no bichromatic spanning tree")
    reach = [neighborhood_of(mono, m) for m in masks]
    for i in range(len(masks)):
        for j in range(i + 1, len(masks)):
            if not reach[i] & masks[j]:
                return Verdict(False, f"branch sets {i} and {j} have no monochromatic joining edge")
    return Verdict(True)


def connected_subsets(g: Graph) -> list[int]:
    """Every nonempty vertex mask inducing a connected subgraph, ascending."""
    return [m for m in range(1, 1 << g.n) if is_connected_mask(g.adj, m)]


def hadwiger_bruteforce(g: Graph, budget: int = 10**8) -> int:
    """Exact Hadwiger number of a graph with at most ten vertices.

    Branch sets are the vertices of an auxiliary graph joining disjoint,
    adjacent connected sets; a largest complete minor is a maximum clique
    there.
    """
    if g.n > HADWIGER_CAP:
        raise SizeLimitError(f"{g.n} vertices exceeds the Hadwiger search cap of {HADWIGER_CAP}")
    if g.n == 0:
        return 0
    subsets = connected_subsets(g)
    reach = [neighborhood_of(g.adj, m) for m in subsets]
    rows = [0] * len(subsets)
    for i, a in enumerate(subsets):
        for j in range(i + 1, len(subsets)):
            b = subsets[j]
            if not a & b and reach[i] & b:
                rows[i] |= 1 << j
                rows[j] |= 1 << i
    try:
        return len(_kernels.max_clique(rows, budget=budget, max_depth=g.n))
    except _kernels.BudgetExceeded as exc:
        raise BudgetExceededError(f"Hadwiger search exceeded {budget} nodes") from exc


@dataclass(frozen=True)
class ConjectureAudit:
    alpha_h_product: int
    n: int
    satisfied: bool
    alpha: int = 0
    h: int = 0
    notes: list[str] = field(default_factory=list)


def conjecture_audit(g: Graph) -> ConjectureAudit:
    """Compare ``alpha(G) * h(G)`` with ``n``; a failure is reported, never raised."""
    h = hadwiger_bruteforce(g)
    a = alpha_mask(g, g.full_mask)
    product = a * h
    ok = product >= g.n
    notes = [] if ok else [f"alpha*h = {product} < n = {g.n}: counterexample candidate"]
    return ConjectureAudit(product, g.n, ok, a, h, notes)
