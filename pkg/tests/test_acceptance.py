"""End-to-end acceptance checks; each test logs one PASS/FAIL line."""

import json
import time
from fractions import Fraction
from itertools import islice

import mpmath
import networkx as nx
import numpy as np
import pytest

from conftest import ACCEPTANCE_LINES
from hadminor.bounds import TAU, bound_r, check_f_properties
from hadminor.algorithms import run_log
from hadminor.chordal import alpha_weighted_bruteforce, max_clique_chordal
from hadminor.enumeration import connected_graphs, labeled_graphs
from hadminor.experiments import ExperimentSpec, run_experiments, run_one
from hadminor.family import RunTrace, replay
from hadminor.generators import complement_cliques, gnp
from hadminor.graph import Graph, alpha
from hadminor.verify import MinorCertificate, conjecture_audit, hadwiger_bruteforce, verify_minor
from oracles import nx_graph

pytestmark = pytest.mark.slow

LABELED_MAX_N = 6
ISO_CLASS_N = 7
GNP_COUNT = 2000
ALPHA5_TARGET = 200


def report(k, ok, detail, seconds):
    ACCEPTANCE_LINES.append(f"criterion {k}: {'PASS' if ok else 'FAIL'}  {detail}  [{seconds:.1f}s]")


# ---------------------------------------------------------------------------
# corpora


def small_corpus():
    """Every labeled connected graph up to LABELED_MAX_N vertices, then one
    graph per isomorphism class on ISO_CLASS_N vertices."""
    for n in range(1, LABELED_MAX_N + 1):
        yield from labeled_graphs(n)
    yield from connected_graphs(ISO_CLASS_N)


def gnp_corpus():
    rng = np.random.default_rng(20240101)
    for seed in range(GNP_COUNT):
        n = int(rng.integers(1, 21))
        p = float(rng.uniform(0.05, 0.9))
        yield gnp(n, p, seed)


def alpha5_corpus():
    """Alternating clique-complement and G(n, p) graphs filtered to alpha = 5."""
    rng = np.random.default_rng(5)
    seed = 0
    while True:
        seed += 1
        sizes = [int(s) for s in rng.integers(1, 7, size=5)]
        cross = float(rng.uniform(0.0, 0.3))
        g = complement_cliques(sizes, cross, seed=seed)
        if alpha(g) == 5:
            yield "complement_cliques", g
        n = int(rng.integers(12, 31))
        g = gnp(n, 0.25 + 0.013 * n, seed)
        if alpha(g) == 5:
            yield "gnp", g


_ALPHA: dict = {}


def independent_alpha(g: Graph) -> int:
    """Independence number via networkx's clique search on the complement."""
    if g not in _ALPHA:
        clique, _ = nx.max_weight_clique(nx.complement(nx_graph(g)), weight=None) if g.n else ([], 0)
        _ALPHA[g] = len(clique)
    return _ALPHA[g]


mpmath.mp.dps = 50
_MP_TAU = 2 * mpmath.sqrt(2) / (mpmath.sqrt(2) - 1)


def log_divisor(a: int) -> int:
    x = 2 * mpmath.sqrt(2) * a
    f = max(int(mpmath.ceil(mpmath.log(_MP_TAU * x / (4 * mpmath.sqrt(2)), _MP_TAU))), 0)
    return 2 * a - f


def dm2_need(n: int, a: int) -> int:
    if a == 1:
        return n
    if a == 2:
        return -(-n // 3)
    return -(-n // (2 * a - 2))


# ---------------------------------------------------------------------------
# shared audited runs (criteria 1, 2, 6, 8, 9)


class Tally:
    def __init__(self):
        self.runs = 0
        self.failures = []
        self.checks = {}
        self.records = []
        self.seconds = 0.0

    def fail(self, what):
        if len(self.failures) < 20:
            self.failures.append(what)
        else:
            self.failures.append("...")


RUNS: dict = {}


def audited(algorithm, graphs):
    """Run a driver with full audits; collect guarantee, invariant, weight and replay outcomes."""
    if algorithm in RUNS:
        return RUNS[algorithm]
    start = time.time()
    t = Tally()
    for g in graphs:
        rec, trace_text = run_one(g, algorithm, "full")
        t.runs += 1
        if rec["status"] == "skipped":
            continue
        for c in rec.get("invariant_audit", []):
            t.checks.setdefault(c["name"], [0, 0])
            t.checks[c["name"]][0 if c["ok"] else 1] += 1
        if rec["status"] != "ok":
            t.fail((rec["graph6"], rec["status"], rec.get("detail")))
            continue
        cert = MinorCertificate.from_json(rec["minor"])
        if not verify_minor(g, cert):
            t.fail((rec["graph6"], "certificate"))
        t.checks.setdefault("trace_json_replay", [0, 0])
        again = replay(g, RunTrace.from_json(json.loads(trace_text)))
        ok = again.trace.dumps() == trace_text
        t.checks["trace_json_replay"][0 if ok else 1] += 1
        t.records.append((g, rec))
    t.seconds = time.time() - start
    RUNS[algorithm] = t
    return t


def corpus():
    return list(small_corpus()) + list(gnp_corpus())


CORPUS: list = []


def get_corpus():
    if not CORPUS:
        CORPUS.extend(corpus())
    return CORPUS


# ---------------------------------------------------------------------------


def test_criterion_1_dm2_guarantee():
    start = time.time()
    graphs = get_corpus()
    t = audited("dm2", graphs)
    short = 0
    for g, rec in t.records:
        need = dm2_need(g.n, independent_alpha(g))
        if rec["achieved_size"] < need or rec["guaranteed_size"] != need:
            short += 1
            t.fail((rec["graph6"], "short", rec["achieved_size"], need))
    ok = not t.failures and short == 0 and len(t.records) == len(graphs)
    report(1, ok, f"dm2: {len(t.records)} runs verified, {len(t.failures)} failures", time.time() - start)
    assert ok, t.failures[:5]


def test_criterion_2_log_guarantee():
    start = time.time()
    graphs = get_corpus()
    t = audited("log", graphs)
    short = 0
    divisors = {}
    for g, rec in t.records:
        a = independent_alpha(g)
        d = divisors.setdefault(a, log_divisor(a))
        if rec["achieved_size"] < -(-g.n // d):
            short += 1
            t.fail((rec["graph6"], "short"))
    accept = t.checks.get("acceptable_breakings", [0, 0])
    chordal = t.checks.get("chordal", [0, 0])
    ok = not t.failures and short == 0 and accept[1] == 0 and chordal[1] == 0 and len(t.records) == len(graphs)
    report(
        2, ok,
        f"log: {len(t.records)} runs verified, breakings acceptable in {accept[0]}, H chordal in {chordal[0]}, "
        f"{len(t.failures)} failures",
        time.time() - start,
    )
    assert ok, t.failures[:5]


def test_criterion_3_alpha5():
    start = time.time()
    t = Tally()
    overruns = []
    by_source = {"complement_cliques": 0, "gnp": 0}
    cases = {}
    for source, g in alpha5_corpus():
        if len(t.records) >= ALPHA5_TARGET + 40:
            break
        rec, trace_text = run_one(g, "alpha5", "full")
        if rec["status"] == "budget_exceeded":
            overruns.append(rec["graph6"])
            continue
        t.runs += 1
        for c in rec.get("invariant_audit", []):
            t.checks.setdefault(c["name"], [0, 0])
            t.checks[c["name"]][0 if c["ok"] else 1] += 1
        need = -(-5 * g.n // 38)
        cert = MinorCertificate.from_json(rec["minor"]) if "minor" in rec else None
        if rec["status"] != "ok" or not verify_minor(g, cert) or rec["achieved_size"] < need:
            t.fail((rec["graph6"], rec["status"], rec.get("detail")))
            continue
        t.records.append((g, rec))
        by_source[source] += 1
        cases[rec["notes"][0]] = cases.get(rec["notes"][0], 0) + 1
    RUNS["alpha5"] = t
    ok = not t.failures and len(t.records) >= ALPHA5_TARGET and all(g.n <= 30 for g, _ in t.records)
    ACCEPTANCE_LINES.append(f"  alpha5 budget overruns (reported, not counted as passes): {len(overruns)} {overruns}")
    report(
        3, ok,
        f"alpha5: {len(t.records)} verified ({by_source}), cases {dict(sorted(cases.items()))}, "
        f"{len(overruns)} overruns, {len(t.failures)} failures",
        time.time() - start,
    )
    assert ok, t.failures[:5]


def test_criterion_4_f_properties():
    start = time.time()
    good = check_f_properties(500, TAU)
    bad = check_f_properties(500, 6.0)
    ok = good.ok and len(good.results) == 11 and not bad.ok
    report(4, ok, f"all of P1..P11 hold for tau=4+2*sqrt2; tau=6.0 fails {bad.failed()}", time.time() - start)
    assert ok, good.lines()


def test_criterion_5_bound_table():
    start = time.time()
    low = [a for a in range(3, 14) if not bound_r(a) >= 2 * a - 2]
    high = [a for a in range(14, 301) if not bound_r(a) < 2 * a - 2]
    ref = [a for a in range(1, 301) if bound_r(a) != log_divisor(a)]
    ok = not low and not high and not ref
    report(5, ok, "r(a) >= 2a-2 for 3..13 and r(a) < 2a-2 for 14..300", time.time() - start)
    assert ok, (low, high, ref)


def test_criterion_6_operation_invariants():
    start = time.time()
    missing = [k for k in ("dm2", "log", "alpha5") if k not in RUNS]
    for k in missing:
        if k == "alpha5":
            test_criterion_3_alpha5()
        else:
            audited(k, get_corpus())
    bad = {k: t.checks.get("family_invariants", [0, 0])[1] for k, t in RUNS.items()}
    errors = {k: sum(1 for f in t.failures if "InvariantViolation" in str(f)) for k, t in RUNS.items()}
    total = sum(t.checks.get("family_invariants", [0, 0])[0] for t in RUNS.values())
    ok = not any(bad.values()) and not any(errors.values())
    report(6, ok, f"invariants asserted after every operation; {total} audited runs, violations {bad}", time.time() - start)
    assert ok


def test_criterion_7_oracle_ceiling():
    start = time.time()
    exceed = []
    unsatisfied = []
    graphs = 0
    for n in range(1, 9):
        for g in connected_graphs(n):
            graphs += 1
            h = hadwiger_bruteforce(g)
            audit = conjecture_audit(g)
            if not audit.satisfied:
                unsatisfied.append(g)
            drivers = ["dm2", "log"] + (["alpha5"] if audit.alpha == 5 else [])
            for name in drivers:
                rec, _ = run_one(g, name, "fast")
                if rec["status"] != "ok" or rec["achieved_size"] > h:
                    exceed.append((rec["graph6"], name, rec.get("achieved_size"), h))
    ok = not exceed
    if unsatisfied:
        ACCEPTANCE_LINES.append(f"  !!! alpha*h < n on {len(unsatisfied)} graphs: {unsatisfied[:5]}")
    report(
        7, ok,
        f"{graphs} connected graphs n<=8: driver sizes <= h(G); alpha*h >= n on {graphs - len(unsatisfied)}/{graphs}",
        time.time() - start,
    )
    assert ok, exceed[:5]


def test_criterion_8_weighted_clique_bound():
    start = time.time()
    for k in ("dm2", "log"):
        audited(k, get_corpus())
    if "alpha5" not in RUNS:
        test_criterion_3_alpha5()
    checked = 0
    bad = []
    alpha2_checked = 0
    for name, t in RUNS.items():
        for g, rec in t.records:
            by_name = {c["name"]: c for c in rec["invariant_audit"]}
            if "weighted_clique_bound" not in by_name:
                continue
            checked += 1
            if not by_name["weighted_clique_bound"]["ok"]:
                bad.append((rec["graph6"], name))
            if name == "dm2" and rec["alpha"] == 2:
                alpha2_checked += 1
                if not by_name["alpha_w_at_most_3"]["ok"]:
                    bad.append((rec["graph6"], name, "alpha_w > 3"))
    # independent recomputation on a slice of runs
    for g, rec in islice(RUNS["log"].records, 0, None, 97):
        res = run_log(g)
        h, w = res.h_graph, res.size_weights()
        if h.n > 22:
            continue
        aw = alpha_weighted_bruteforce(h, w)
        if len(max_clique_chordal(h)) < -(-Fraction(g.n) // aw) or not nx.is_chordal(nx_graph(h)):
            bad.append((rec["graph6"], "recomputed"))
    ok = not bad and checked > 0
    report(8, ok, f"{checked} runs with |V(H)|<=22 meet the weighted bound; {alpha2_checked} alpha=2 runs have alpha_w<=3",
           time.time() - start)
    assert ok, bad[:5]


def test_criterion_9_determinism_and_replay():
    start = time.time()
    for k in ("dm2", "log"):
        audited(k, get_corpus())
    if "alpha5" not in RUNS:
        test_criterion_3_alpha5()
    replays = {k: t.checks.get("replay", [0, 0]) for k, t in RUNS.items()}
    json_replays = {k: t.checks.get("trace_json_replay", [0, 0]) for k, t in RUNS.items() if k != "alpha5"}
    spec = ExperimentSpec(
        [
            {"kind": "gnp", "n": 16, "p": 0.3, "seed": 100, "count": 10},
            {"kind": "complement_cliques", "sizes": [3, 2, 3, 2, 3], "cross_p": 0.15, "seed": 9, "count": 5, "alpha": 5},
        ],
        oracle=False,
    )
    first = run_experiments(spec).dumps()
    second = run_experiments(spec).dumps()
    ok = first == second and all(v[1] == 0 for v in replays.values()) and all(v[1] == 0 for v in json_replays.values())
    total = sum(v[0] for v in replays.values())
    report(9, ok, f"{total} traces replayed to identical states; repeated seeded report byte-identical ({len(first)} bytes)",
           time.time() - start)
    assert ok
