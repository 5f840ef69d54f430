"""Regenerate the shipped lists of connected graphs up to isomorphism.

n <= 7 comes from the networkx graph atlas; n = 8 is built by adding a vertex
to every connected 7-vertex graph in all possible ways (every connected graph
has a non-cut vertex) and keeping one graph per isomorphism class.
"""

import sys
from pathlib import Path

import networkx as nx

OUT = Path(__file__).resolve().parents[1] / "src" / "hadminor" / "data"
EXPECTED = {1: 1, 2: 1, 3: 2, 4: 6, 5: 21, 6: 112, 7: 853, 8: 11117}


def atlas_connected(n):
    return [g for g in nx.graph_atlas_g() if g.number_of_nodes() == n and nx.is_connected(g)]


def grow(graphs, n):
    buckets = {}
    for base in graphs:
        for mask in range(1, 1 << (n - 1)):
            g = base.copy()
            g.add_node(n - 1)
            g.add_edges_from((n - 1, v) for v in range(n - 1) if mask >> v & 1)
            key = (g.number_of_edges(), tuple(sorted(d for _, d in g.degree())), nx.weisfeiler_lehman_graph_hash(g))
            bucket = buckets.setdefault(key, [])
            if not any(nx.is_isomorphic(g, h) for h in bucket):
                bucket.append(g)
    return [g for key in sorted(buckets) for g in buckets[key]]


def main():
    OUT.mkdir(parents=True, exist_ok=True)
    top = int(sys.argv[1]) if len(sys.argv) > 1 else 8
    prev = None
    for n in range(1, top + 1):
        graphs = atlas_connected(n) if n <= 7 else grow(prev, n)
        assert len(graphs) == EXPECTED[n], (n, len(graphs))
        lines = [nx.to_graph6_bytes(g, header=False).decode().strip() for g in graphs]
        (OUT / f"connected{n}.g6").write_text("\n".join(lines) + "\n")
        print(n, len(graphs))
        prev = graphs


if __name__ == "__main__":
    main()
