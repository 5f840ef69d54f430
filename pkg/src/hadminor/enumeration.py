"""Small-graph corpora: connected graphs up to isomorphism, or all labeled ones."""

from __future__ import annotations

from importlib import resources
from itertools import combinations

from .errors import SizeLimitError
from .graph import Graph, is_connected_mask
from .io import parse_graph6

LABELED_CAP = 7


def _data_file(n: int):
    return resources.files("hadminor").joinpath("data", f"connected{n}.g6")


def has_canonical_list(n: int) -> bool:
    return _data_file(n).is_file()


def labeled_graphs(n: int, connected: bool = True):
    """Every labeled graph on ``n`` vertices (optionally only connected ones)."""
    if n > LABELED_CAP:
        raise SizeLimitError(f"labeled enumeration is capped at n={LABELED_CAP}")
    pairs = list(combinations(range(n), 2))
    full = (1 << n) - 1
    for code in range(1 << len(pairs)):
        adj = [0] * n
        for k, (u, v) in enumerate(pairs):
            if code >> k & 1:
                adj[u] |= 1 << v
                adj[v] |= 1 << u
        if connected and n and not is_connected_mask(adj, full):
            continue
        yield Graph.from_adjacency(adj)


def connected_graphs(n: int) -> list[Graph]:
    """Connected graphs on ``n`` vertices, one per isomorphism class when a
    shipped list exists, otherwise every labeled connected graph."""
    if has_canonical_list(n):
        text = _data_file(n).read_text()
        return [parse_graph6(line) for line in text.splitlines() if line.strip()]
    return list(labeled_graphs(n))
