"""graph6 and DIMACS edge-format reading and writing."""

from __future__ import annotations

from pathlib import Path

from .errors import ParseError
from .graph import Graph

_G6_HEADER = ">>graph6<<"


def _encode_n(n: int) -> str:
    if n < 63:
        return chr(63 + n)
    if n < 258048:
        return "~" + "".join(chr(63 + ((n >> s) & 63)) for s in (12, 6, 0))
    if n < 1 << 36:
        return "~~" + "".join(chr(63 + ((n >> s) & 63)) for s in (30, 24, 18, 12, 6, 0))
    raise ValueError("graph too large for graph6")


def serialize_graph6(g: Graph) -> str:
    """graph6 string (without header or newline)."""
    n = g.n
    bits = []
    adj = g.adj
    for j in range(1, n):
        row = adj[j]
        for i in range(j):
            bits.append(row >> i & 1)
    bits.extend([0] * (-len(bits) % 6))
    body = []
    for k in range(0, len(bits), 6):
        v = 0
        for b in bits[k:k + 6]:
            v = (v << 1) | b
        body.append(chr(63 + v))
    return _encode_n(n) + "".join(body)


def parse_graph6(text: str) -> Graph:
    s = text.strip()
    base = 0
    if s.startswith(_G6_HEADER):
        s = s[len(_G6_HEADER):]
        base = len(_G6_HEADER)
    if not s:
        raise ParseError("empty graph6 string", base)
    for k, ch in enumerate(s):
        if not 63 <= ord(ch) <= 126:
            raise ParseError(f"byte {ch!r} outside the graph6 range", base + k)
    vals = [ord(ch) - 63 for ch in s]
    if vals[0] != 63:
        n, pos = vals[0], 1
    elif len(vals) >= 4 and vals[1] != 63:
        n = (vals[1] << 12) | (vals[2] << 6) | vals[3]
        pos = 4
    elif len(vals) >= 8 and vals[1] == 63:
        n = 0
        for v in vals[2:8]:
            n = (n << 6) | v
        pos = 8
    else:
        raise ParseError("truncated vertex-count header", base + len(vals))
    need = (n * (n - 1) // 2 + 5) // 6
    body = vals[pos:]
    if len(body) != need:
        raise ParseError(f"expected {need} data bytes for n={n}, found {len(body)}", base + pos + min(len(body), need))
    edges = []
    k = 0
    for j in range(1, n):
        for i in range(j):
            if body[k // 6] >> (5 - k % 6) & 1:
                edges.append((i, j))
            k += 1
    tail = n * (n - 1) // 2
    if tail % 6 and body and body[-1] & ((1 << (6 - tail % 6)) - 1):
        raise ParseError("nonzero padding bits", base + pos + need - 1)
    return Graph(n, edges)


def parse_dimacs(text: str) -> Graph:
    """DIMACS edge format: ``p edge n m`` then 1-indexed ``e u v`` lines."""
    n = None
    edges = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line[0] == "c":
            continue
        parts = line.split()
        if parts[0] == "p":
            if n is not None:
                raise ParseError("duplicate problem line", lineno)
            if len(parts) != 4 or parts[1] not in ("edge", "col"):
                raise ParseError("problem line must read 'p edge N M'", lineno)
            try:
                n = int(parts[2])
                int(parts[3])
            except ValueError:
                raise ParseError("non-integer counts on problem line", lineno) from None
            if n < 0:
                raise ParseError("negative vertex count", lineno)
        elif parts[0] == "e":
            if n is None:
                raise ParseError("edge before problem line", lineno)
            if len(parts) != 3:
                raise ParseError("edge line must read 'e U V'", lineno)
            try:
                u, v = int(parts[1]), int(parts[2])
            except ValueError:
                raise ParseError("non-integer vertex", lineno) from None
            if not (1 <= u <= n and 1 <= v <= n):
                raise ParseError(f"vertex out of range 1..{n}", lineno)
            if u == v:
                raise ParseError(f"self-loop at vertex {u}", lineno)
            edges.add((min(u, v) - 1, max(u, v) - 1))
        else:
            raise ParseError(f"unknown line type {parts[0]!r}", lineno)
    if n is None:
        raise ParseError("missing problem line", 0)
    return Graph(n, sorted(edges))


def serialize_dimacs(g: Graph) -> str:
    lines = [f"p edge {g.n} {g.m}"]
    lines.extend(f"e {u + 1} {v + 1}" for u, v in g.sorted_edges())
    return "\n".join(lines) + "\n"


def detect_format(path: str | Path) -> str:
    suffix = Path(path).suffix.lower()
    if suffix in (".g6", ".graph6"):
        return "g6"
    if suffix in (".dimacs", ".col", ".clq", ".txt"):
        return "dimacs"
    head = Path(path).read_text().lstrip()[:1]
    return "dimacs" if head in ("c", "p") else "g6"


def read_graphs(path: str | Path, fmt: str | None = None) -> list[Graph]:
    """All graphs in a file: one per line for graph6, a single one for DIMACS."""
    fmt = fmt or detect_format(path)
    text = Path(path).read_text()
    if fmt == "dimacs":
        return [parse_dimacs(text)]
    if fmt == "g6":
        return [parse_graph6(line) for line in text.splitlines() if line.strip()]
    raise ValueError(f"unknown format {fmt!r}")


def read_graph(path: str | Path, fmt: str | None = None) -> Graph:
    graphs = read_graphs(path, fmt)
    if len(graphs) != 1:
        raise ParseError(f"expected one graph in {path}, found {len(graphs)}")
    return graphs[0]


def write_graph(g: Graph, path: str | Path, fmt: str = "g6") -> None:
    text = serialize_dimacs(g) if fmt == "dimacs" else serialize_graph6(g) + "\n"
    Path(path).write_text(text)
