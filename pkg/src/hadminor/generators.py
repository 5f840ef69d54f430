"""Seeded graph generators for experiments and tests."""

from __future__ import annotations

import numpy as np

from .errors import ParameterError
from .graph import Graph


def _rng(seed):
    if seed is None:
        raise ParameterError("a seed is required for random generators")
    return np.random.default_rng(seed)


def gnp(n: int, p: float, seed: int) -> Graph:
    """Erdos-Renyi ``G(n, p)``; pairs are drawn in lexicographic order."""
    if n < 0:
        raise ParameterError("n must be non-negative")
    if not 0.0 <= p <= 1.0:
        raise ParameterError(f"p must lie in [0, 1], got {p}")
    rng = _rng(seed)
    iu, ju = np.triu_indices(n, k=1)
    keep = rng.random(iu.shape[0]) < p
    return Graph(n, zip(iu[keep].tolist(), ju[keep].tolist()))


def complement_cliques(sizes, cross_p: float = 0.0, seed: int | None = None) -> Graph:
    """Disjoint cliques of the given sizes, optionally with random cross edges.

    Without cross edges the graph is the complement of the complete
    multipartite graph with these part sizes, and its independence number is
    ``len(sizes)``.  Cross edges (each added with probability ``cross_p``) can
    only lower it, so callers wanting an exact value filter on ``alpha``.
    """
    sizes = [int(s) for s in sizes]
    if any(s < 1 for s in sizes):
        raise ParameterError("clique sizes must be positive")
    if not 0.0 <= cross_p <= 1.0:
        raise ParameterError(f"cross_p must lie in [0, 1], got {cross_p}")
    part = np.repeat(np.arange(len(sizes)), sizes)
    n = int(part.shape[0])
    iu, ju = np.triu_indices(n, k=1)
    same = part[iu] == part[ju]
    if cross_p > 0:
        same |= _rng(seed).random(iu.shape[0]) < cross_p
    return Graph(n, zip(iu[same].tolist(), ju[same].tolist()))


def named(name: str, n: int | None = None) -> Graph:
    builders = {
        "petersen": lambda: Graph.petersen(),
        "cycle": lambda: Graph.cycle(n),
        "complete": lambda: Graph.complete(n),
        "edgeless": lambda: Graph.edgeless(n),
        "path": lambda: Graph.path(n),
    }
    if name not in builders:
        raise ParameterError(f"unknown named graph {name!r}")
    if name != "petersen" and n is None:
        raise ParameterError(f"{name} needs a vertex count")
    return builders[name]()


def generate(spec: dict) -> Graph:
    """Build a graph from a generator description such as
    ``{"kind": "gnp", "n": 10, "p": 0.3, "seed": 1}``."""
    kind = spec.get("kind")
    if kind == "gnp":
        return gnp(spec["n"], spec["p"], spec.get("seed"))
    if kind == "complement_cliques":
        return complement_cliques(spec["sizes"], spec.get("cross_p", 0.0), spec.get("seed"))
    if kind == "named":
        return named(spec["name"], spec.get("n"))
    if kind == "file":
        from .io import read_graph

        return read_graph(spec["path"], spec.get("format"))
    raise ParameterError(f"unknown generator kind {kind!r}")
