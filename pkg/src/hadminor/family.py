"""Red/blue coloured state, the ordered family, and the two family operations.

``extend`` grows one family set along shortest blue paths so that its
independence number rises by the requested amount; ``break_set`` first
colours avoidable edges red and then seeds new sets from maximum independent
sets.  Every mutation is appended to the state's :class:`RunTrace` and, when
``state.check`` is on, followed by a full invariant audit.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field

from .errors import InvariantViolation, OperationRejected, ParameterError, PreconditionError, ReplayMismatch
from .graph import (
    Graph,
    alpha_mask,
    components_of,
    from_mask,
    greedy_maximal_mask,
    is_connected_mask,
    iter_bits,
    mis_mask,
    neighborhood_of,
    popcount,
    sorted_members,
)


@dataclass
class FamilySet:
    mask: int
    ext: int
    birth: str

    @property
    def members(self) -> frozenset[int]:
        return from_mask(self.mask)

    def __len__(self) -> int:
        return popcount(self.mask)


@dataclass
class TraceEntry:
    op: str
    params: dict
    result: dict

    def to_json(self) -> dict:
        return {"op": self.op, "params": self.params, "result": self.result}


@dataclass
class RunTrace:
    entries: list[TraceEntry] = field(default_factory=list)

    def record(self, op: str, params: dict, result: dict) -> None:
        self.entries.append(TraceEntry(op, params, result))

    def to_json(self) -> dict:
        return {"entries": [e.to_json() for e in self.entries]}

    @classmethod
    def from_json(cls, doc: dict) -> RunTrace:
        return cls([TraceEntry(e["op"], e["params"], e["result"]) for e in doc["entries"]])

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True, separators=(",", ":"))

    def digest(self) -> str:
        return hashlib.sha256(self.dumps().encode()).hexdigest()

    def __len__(self) -> int:
        return len(self.entries)


@dataclass
class ExtendReport:
    vertices_added: frozenset[int]


@dataclass
class BreakReport:
    new_set_indices: list[int]
    edges_colored_red: list[tuple[int, int]]
    acceptable: bool
    violations: list[tuple]


@dataclass
class AcceptabilityReport:
    ok: bool
    violations: list[tuple] = field(default_factory=list)


class ColoredState:
    """A graph, its red edges, the ordered family, and the operation log."""

    def __init__(self, graph: Graph, check: bool = True):
        self.graph = graph
        self.check = check
        self.red = [0] * graph.n
        self.family: list[FamilySet] = []
        self.trace = RunTrace()
        self.covered = 0
        self._blue: list[int] | None = None

    # -- views ------------------------------------------------------------
    @property
    def uncovered(self) -> int:
        return self.graph.full_mask & ~self.covered

    def blue_rows(self) -> list[int]:
        if self._blue is None:
            self._blue = [a & ~r for a, r in zip(self.graph.adj, self.red)]
        return self._blue

    @property
    def red_edges(self) -> frozenset[tuple[int, int]]:
        return frozenset((u, v) for u in range(self.graph.n) for v in iter_bits(self.red[u]) if u < v)

    def sets(self) -> list[frozenset[int]]:
        return [t.members for t in self.family]

    def is_partition(self) -> bool:
        return self.covered == self.graph.full_mask

    def snapshot(self) -> tuple:
        return tuple(self.red), tuple((t.mask, t.ext, t.birth) for t in self.family)

    # -- mutation primitives ----------------------------------------------
    def _color(self, pairs: list[tuple[int, int]]) -> None:
        for u, v in pairs:
            self.red[u] |= 1 << v
            self.red[v] |= 1 << u
        if pairs:
            self._blue = None

    def _add_set(self, mask: int, ext: int, birth: str) -> int:
        self.family.append(FamilySet(mask, ext, birth))
        self.covered |= mask
        return len(self.family) - 1

    def _grow(self, t_index: int, added: int, amount: int) -> None:
        t = self.family[t_index]
        t.mask |= added
        t.ext += amount
        self.covered |= added

    # -- audit ------------------------------------------------------------
    def audit(self) -> list[str]:
        """Return the list of violated structural invariants (empty if fine)."""
        problems = []
        g = self.graph
        seen = 0
        blue = self.blue_rows()
        for i, t in enumerate(self.family):
            if t.mask & seen:
                problems.append(f"set {i} overlaps an earlier set")
            seen |= t.mask
            if not is_connected_mask(blue, t.mask):
                problems.append(f"set {i} is not connected in the blue subgraph")
            if popcount(t.mask) > 2 * t.ext - 1:
                problems.append(f"set {i}: |T|={popcount(t.mask)} > 2*ext-1={2 * t.ext - 1}")
            if t.ext > alpha_mask(g, t.mask):
                problems.append(f"set {i}: ext={t.ext} > alpha={alpha_mask(g, t.mask)}")
        if seen != self.covered:
            problems.append("covered mask out of sync with family")
        for v in range(g.n):
            if self.red[v] & ~g.adj[v]:
                problems.append(f"red non-edge at vertex {v}")
        return problems

    def assert_invariants(self) -> None:
        problems = self.audit()
        if problems:
            raise InvariantViolation("; ".join(problems))


# ---------------------------------------------------------------------------
# helpers

def _edges_between(g: Graph, a: int, b: int) -> list[tuple[int, int]]:
    out = []
    for u in iter_bits(a):
        for v in iter_bits(g.adj[u] & b):
            out.append((u, v) if u < v else (v, u))
    return sorted(out)


def _all_red_between(state: ColoredState, a: int, b: int) -> bool:
    adj = state.graph.adj
    return all(not (adj[u] & b & ~state.red[u]) for u in iter_bits(a))


def _lowest(mask: int, count: int) -> int:
    out = 0
    for v in iter_bits(mask):
        if not count:
            break
        out |= 1 << v
        count -= 1
    return out


def _shortest_blue_path(blue: list[int], region: int, source: int, target: int) -> list[int]:
    """Lexicographically smallest shortest path from ``source`` to ``target``.

    Paths run in the blue subgraph induced on ``region``; the returned list
    starts in ``source`` and ends in ``target``.
    """
    layers = [target]
    seen = target
    frontier = target
    while not (frontier & source):
        frontier = neighborhood_of(blue, frontier) & region & ~seen
        if not frontier:
            raise InvariantViolation("no blue path between the set and its independent set")
        seen |= frontier
        layers.append(frontier)
    start = layers[-1] & source
    cur = (start & -start).bit_length() - 1
    path = [cur]
    for d in range(len(layers) - 2, -1, -1):
        step = blue[cur] & layers[d]
        cur = (step & -step).bit_length() - 1
        path.append(cur)
    return path


def _extension_procedure(state: ColoredState, tmask: int, xmask: int, k: int) -> int:
    """Vertices of ``xmask`` to add to ``tmask`` (the four-case growth loop)."""
    g = state.graph
    adj = g.adj
    blue = state.blue_rows()
    region = xmask | tmask
    indep = mis_mask(g, xmask & ~neighborhood_of(adj, tmask))
    if popcount(indep) < k:
        raise OperationRejected("alpha(x - N(T)) < k")
    t = tmask
    i = 0
    while i < k:
        path = _shortest_blue_path(blue, region, t, indep & ~t)
        length = len(path) - 1
        if length not in (2, 3):
            raise InvariantViolation(f"extension path has length {length}")
        if length == 2:
            p2 = path[1]
            near = adj[p2] & indep & ~t
            r = min(k - i, popcount(near))
            t |= (1 << p2) | _lowest(near, r)
            i += r
            continue
        p2, p3, p4 = path[1], path[2], path[3]
        near = adj[p3] & indep & ~t
        c = popcount(near)
        if c >= 2 and i <= k - 2:
            r = min(k - i, c)
            t |= (1 << p2) | (1 << p3) | _lowest(near, r)
            i += r
            free = xmask & ~t & ~neighborhood_of(adj, t)
            indep = greedy_maximal_mask(g, indep | free, indep)
        elif c == 1:
            indep = (indep & ~(1 << p4)) | (1 << p3)
            t |= (1 << p2) | (1 << p3)
            free = xmask & ~t & ~neighborhood_of(adj, t)
            indep = greedy_maximal_mask(g, indep | free, indep)
            i += 1
        else:
            t |= (1 << p2) | (1 << p3)
            i += 1
    return t & ~tmask


def _check_extension(state: ColoredState, tmask: int, xmask: int, k: int) -> int:
    """Validate extension preconditions; return ``alpha(x - N(T))``."""
    if k < 1:
        raise OperationRejected("k >= 1", f"extension amount must be positive, got {k}")
    if not xmask:
        raise OperationRejected("x nonempty")
    if xmask & state.covered:
        raise OperationRejected("x disjoint from family", "x meets a family set")
    blue = state.blue_rows()
    if any(state.red[u] & xmask for u in iter_bits(tmask)):
        raise OperationRejected("no red edges between T and x")
    if not is_connected_mask(blue, xmask | tmask):
        raise OperationRejected("G_b[x + T] connected")
    room = alpha_mask(state.graph, xmask & ~neighborhood_of(state.graph.adj, tmask))
    if k > room:
        raise OperationRejected("k <= alpha(x - N(T))", f"k={k} exceeds alpha(x - N(T))={room}")
    return room


def _do_extend(state: ColoredState, t_index: int, xmask: int, k: int) -> int:
    g = state.graph
    tmask = state.family[t_index].mask
    room = _check_extension(state, tmask, xmask, k)
    alpha_before = alpha_mask(g, tmask)
    added = _extension_procedure(state, tmask, xmask, k)
    state._grow(t_index, added, k)
    if state.check:
        new = tmask | added
        if popcount(added) > 2 * k:
            raise InvariantViolation(f"extension added {popcount(added)} > 2k={2 * k} vertices")
        if alpha_mask(g, new) < alpha_before + k:
            raise InvariantViolation("extension did not raise alpha(T) by k")
        if not is_connected_mask(state.blue_rows(), new):
            raise InvariantViolation("extended set is not blue-connected")
        rest = xmask & ~new
        if alpha_mask(g, rest & ~neighborhood_of(g.adj, new)) > room - k:
            raise InvariantViolation("extension did not reduce alpha(x - N(T)) by k")
    return added


# ---------------------------------------------------------------------------
# public operations

def extend(state: ColoredState, t_index: int, x, k: int, label: str | None = None) -> ExtendReport:
    """Extend family set ``t_index`` into ``x`` by ``k``."""
    if not 0 <= t_index < len(state.family):
        raise OperationRejected("valid set index", f"no family set at position {t_index}")
    xmask = state.graph.mask(x)
    added = _do_extend(state, t_index, xmask, k)
    params = {"t_index": t_index, "x": sorted_members(xmask), "k": k}
    if label is not None:
        params["label"] = label
    state.trace.record("extend", params, {"added": sorted_members(added)})
    if state.check:
        state.assert_invariants()
    return ExtendReport(from_mask(added))


def _check_break_target(state: ColoredState, xmask: int, k: int) -> None:
    if k < 1:
        raise ParameterError(f"breaking amount must be positive, got {k}")
    if xmask & state.covered:
        raise PreconditionError("x meets a family set")
    rest = state.uncovered & ~xmask
    if neighborhood_of(state.graph.adj, xmask) & rest:
        raise PreconditionError("x touches U - x")


def is_acceptable_break(state: ColoredState, x, k: int) -> AcceptabilityReport:
    """Check the two acceptability conditions for breaking ``x`` by ``k``."""
    g = state.graph
    xmask = g.mask(x)
    _check_break_target(state, xmask, k)
    violations = []
    comps = components_of(g.adj, xmask)
    for ti, t in enumerate(state.family):
        nt = neighborhood_of(g.adj, t.mask)
        for d in comps:
            if _all_red_between(state, t.mask, d):
                continue
            rest = alpha_mask(g, d & ~nt)
            if rest == alpha_mask(g, d) or rest < k:
                continue
            violations.append(("condition-i", ti, sorted_members(d), rest))
    for d in comps:
        a = alpha_mask(g, d)
        if a >= 2 * k:
            violations.append(("condition-ii", sorted_members(d), a))
    return AcceptabilityReport(not violations, violations)


def break_set(state: ColoredState, x, k: int, label: str = "") -> BreakReport:
    """Break ``x`` (a union of components of the uncovered graph) by ``k``."""
    g = state.graph
    xmask = g.mask(x)
    verdict = is_acceptable_break(state, xmask, k)
    # step (a)
    colored = []
    comps = components_of(g.adj, xmask)
    for t in state.family:
        nt = neighborhood_of(g.adj, t.mask)
        for d in comps:
            if alpha_mask(g, d & ~nt) == alpha_mask(g, d):
                colored.extend(_edges_between(g, t.mask, d))
    state._color(colored)
    # step (b)
    new_indices = []
    rest = xmask
    while True:
        target = next((d for d in components_of(g.adj, rest) if alpha_mask(g, d) >= k), None)
        if target is None:
            break
        seed = mis_mask(g, target)
        v = (seed & -seed).bit_length() - 1
        idx = state._add_set(1 << v, 1, label)
        if k > 1:
            _do_extend(state, idx, target & ~(1 << v), k - 1)
        new_indices.append(idx)
        rest &= ~state.family[idx].mask
    state.trace.record(
        "break",
        {"x": sorted_members(xmask), "k": k, "label": label},
        {
            "acceptable": verdict.ok,
            "red": [list(e) for e in colored],
            "new_sets": [sorted_members(state.family[i].mask) for i in new_indices],
        },
    )
    if state.check:
        for d in components_of(g.adj, rest):
            if alpha_mask(g, d) >= k:
                raise InvariantViolation("breaking left a component with alpha >= k")
        for i in new_indices:
            t = state.family[i]
            if t.ext != k or alpha_mask(g, t.mask) < k:
                raise InvariantViolation(f"new set {i} has ext {t.ext} / alpha below k={k}")
        state.assert_invariants()
    return BreakReport(new_indices, colored, verdict.ok, verdict.violations)


def color_red(state: ColoredState, t_index: int, target, label: str = "") -> list[tuple[int, int]]:
    """Colour every edge between family set ``t_index`` and ``target`` red."""
    g = state.graph
    tmask = state.family[t_index].mask
    target_mask = g.mask(target)
    if target_mask & state.covered:
        raise PreconditionError("red colouring target must be uncovered")
    pairs = _edges_between(g, tmask, target_mask)
    state._color(pairs)
    state.trace.record(
        "color_red",
        {"t_index": t_index, "target": sorted_members(target_mask), "label": label},
        {"red": [list(e) for e in pairs]},
    )
    if state.check:
        state.assert_invariants()
    return pairs


def seed_family(state: ColoredState, sets, label: str = "seed") -> list[int]:
    """Install an initial family; each set gets ``ext`` equal to its alpha.

    Used for starting families that are not produced by operations (they must
    already form a partial simplicial elimination ordering).
    """
    g = state.graph
    indices = []
    masks = [g.mask(s) for s in sets]
    for m in masks:
        if m & state.covered:
            raise PreconditionError("seed sets must be disjoint and uncovered")
        indices.append(state._add_set(m, alpha_mask(g, m), label))
    state.trace.record("seed", {"sets": [sorted_members(m) for m in masks], "label": label}, {})
    if state.check:
        state.assert_invariants()
    return indices


def touches(state: ColoredState, a, b, mode: str = "any") -> bool:
    """Whether ``a`` and ``b`` intersect or are joined by an edge.

    ``mode="blue_only"`` ignores red edges.
    """
    g = state.graph
    am, bm = g.mask(a), g.mask(b)
    if am & bm:
        return True
    if mode == "any":
        rows = g.adj
    elif mode == "blue_only":
        rows = state.blue_rows()
    else:
        raise ValueError(f"unknown mode {mode!r}")
    return bool(neighborhood_of(rows, am) & bm)


# ---------------------------------------------------------------------------
# replay

def replay(graph: Graph, trace: RunTrace, check: bool = True) -> ColoredState:
    """Re-execute ``trace`` on a fresh state, verifying every recorded effect."""
    state = ColoredState(graph, check=check)
    for n, entry in enumerate(trace.entries):
        p = entry.params
        if entry.op == "seed":
            seed_family(state, p["sets"], p["label"])
        elif entry.op == "break":
            break_set(state, p["x"], p["k"], p["label"])
        elif entry.op == "extend":
            extend(state, p["t_index"], p["x"], p["k"], p.get("label"))
        elif entry.op == "color_red":
            color_red(state, p["t_index"], p["target"], p["label"])
        else:
            raise ReplayMismatch(f"entry {n}: unknown op {entry.op!r}")
        got = state.trace.entries[-1]
        if got.result != entry.result:
            raise ReplayMismatch(f"entry {n} ({entry.op}) produced a different result")
    return state
