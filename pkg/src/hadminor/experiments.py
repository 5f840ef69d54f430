"""Batch runs, per-run audits, and report/table output."""

from __future__ import annotations

import csv
import io as _io
import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

from .algorithms import DEFAULT_STEP1_BUDGET, DRIVERS, RunResult
from .bounds import bound_r
from .chordal import WEIGHTED_ALPHA_CAP, alpha_weighted_bruteforce, is_chordal, is_pseo, max_clique_chordal
from .enumeration import connected_graphs
from .errors import BudgetExceededError, HadminorError
from .family import replay
from .generators import generate
from .graph import Graph, alpha
from .io import parse_graph6, serialize_graph6
from .verify import HADWIGER_CAP, MinorCertificate, hadwiger_bruteforce, verify_minor

SCHEMA_VERSION = 1
AUDIT_LEVELS = ("none", "fast", "full")


@dataclass
class ExperimentSpec:
    graphs: list[dict]
    algorithm: str = "all"
    audit: str = "full"
    oracle: bool = False
    budget: int = DEFAULT_STEP1_BUDGET
    workers: int = 1

    def algorithms(self) -> list[str]:
        return list(DRIVERS) if self.algorithm == "all" else [self.algorithm]

    def to_json(self) -> dict:
        return {
            "graphs": self.graphs,
            "algorithm": self.algorithm,
            "audit": self.audit,
            "oracle": self.oracle,
            "budget": self.budget,
        }


@dataclass
class Report:
    spec: dict
    records: list[dict] = field(default_factory=list)
    traces: dict[str, str] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(r["status"] in ("ok", "skipped") for r in self.records)

    def summary(self) -> dict:
        counts: dict[str, int] = {}
        for r in self.records:
            counts[r["status"]] = counts.get(r["status"], 0) + 1
        return {"records": len(self.records), "by_status": dict(sorted(counts.items()))}

    def to_json(self) -> dict:
        return {
            "schema_version": SCHEMA_VERSION,
            "spec": self.spec,
            "summary": self.summary(),
            "records": self.records,
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True, indent=1)

    def write(self, out_dir: str | Path) -> Path:
        out = Path(out_dir)
        (out / "traces").mkdir(parents=True, exist_ok=True)
        for digest, text in sorted(self.traces.items()):
            (out / "traces" / f"{digest}.json").write_text(text)
        (out / "report.json").write_text(self.dumps())
        (out / "results.csv").write_text(records_csv(self.records))
        return out / "report.json"


# ---------------------------------------------------------------------------
# graph sources

def expand_graphs(sources: list[dict]) -> list[tuple[dict, Graph]]:
    """Turn generator descriptions into concrete graphs.

    Besides the single-graph kinds understood by :func:`generate`, a ``count``
    on a seeded kind yields consecutive seeds, ``{"kind": "connected", "n": k}``
    yields the connected-graph corpus on ``k`` vertices, ``{"kind": "g6",
    "code": ...}`` is a literal graph, and ``alpha`` filters by independence
    number.
    """
    out = []
    for src in sources:
        kind = src.get("kind")
        if kind == "connected":
            graphs = [({"kind": "connected", "n": src["n"], "index": i}, g) for i, g in enumerate(connected_graphs(src["n"]))]
        elif kind == "g6":
            graphs = [(dict(src), parse_graph6(src["code"]))]
        elif "count" in src:
            graphs = []
            for k in range(src["count"]):
                one = {key: val for key, val in src.items() if key not in ("count", "alpha")}
                one["seed"] = src.get("seed", 0) + k
                graphs.append((one, generate(one)))
        else:
            graphs = [({key: val for key, val in src.items() if key != "alpha"}, generate(src))]
        if "alpha" in src:
            graphs = [(s, g) for s, g in graphs if alpha(g) == src["alpha"]]
        out.extend(graphs)
    return out


# ---------------------------------------------------------------------------
# audits

def audit_result(g: Graph, res: RunResult, level: str = "full", oracle: bool = False) -> list[dict]:
    """Post-run checks; each entry is ``{"name", "ok", "detail"}``."""
    checks = []

    def add(name, ok, detail=""):
        checks.append({"name": name, "ok": bool(ok), "detail": detail})

    add("guarantee", res.achieved_size >= res.guaranteed_size, f"{res.achieved_size} >= {res.guaranteed_size}")
    if level == "none":
        return checks
    v = verify_minor(g, res.minor)
    add("certificate", v.ok, v.reason)
    add("acceptable_breakings", res.breakings_acceptable)
    chordal = is_chordal(res.h_graph)
    add("chordal", chordal.ok, "" if chordal.ok else f"hole {chordal.hole}")
    if level == "fast":
        return checks
    pseo = is_pseo(g, res.state.red_edges, res.state.family)
    add("pseo", pseo.ok, "" if pseo.ok else f"witness {pseo.witness}")
    audit = res.state.audit()
    add("family_invariants", not audit, "; ".join(audit))
    try:
        again = replay(g, res.state.trace)
        add("replay", again.snapshot() == res.state.snapshot())
    except HadminorError as exc:
        add("replay", False, str(exc))
    h = res.h_graph
    if h.n <= WEIGHTED_ALPHA_CAP:
        w = res.size_weights()
        aw = alpha_weighted_bruteforce(h, w)
        omega = len(max_clique_chordal(h, chordal.order)) if chordal.ok else 0
        need = -(-Fraction(g.n) // aw)
        add("weighted_clique_bound", omega >= need, f"omega(H)={omega} >= ceil(n/alpha_w)={need}")
        if res.algorithm == "dm2" and res.alpha == 2:
            add("alpha_w_at_most_3", aw <= 3, f"alpha_w={aw}")
        if res.algorithm == "log":
            r = bound_r(res.alpha)
            add("alpha_w_at_most_r", aw <= r, f"alpha_w={aw} <= {r}")
    if oracle and g.n <= HADWIGER_CAP:
        hg = hadwiger_bruteforce(g)
        add("oracle_ceiling", res.achieved_size <= hg, f"{res.achieved_size} <= h={hg}")
    return checks


# ---------------------------------------------------------------------------
# running

def run_one(g: Graph, algorithm: str, level: str = "full", oracle: bool = False,
            budget: int = DEFAULT_STEP1_BUDGET) -> tuple[dict, str | None]:
    """Run one driver with audits; returns the record and the trace text."""
    rec = {"algorithm": algorithm, "n": g.n, "m": g.m, "graph6": serialize_graph6(g)}
    a = alpha(g) if g.n else 0
    rec["alpha"] = a
    if algorithm == "alpha5" and a != 5:
        rec["status"] = "skipped"
        rec["detail"] = "independence number is not 5"
        return rec, None
    kwargs = {"check": level != "none"}
    if algorithm == "alpha5":
        kwargs["budget"] = budget
    try:
        res = DRIVERS[algorithm](g, **kwargs)
    except BudgetExceededError as exc:
        rec["status"] = "budget_exceeded"
        rec["detail"] = str(exc)
        return rec, None
    except HadminorError as exc:
        rec["status"] = "error"
        rec["detail"] = f"{type(exc).__name__}: {exc}"
        return rec, None
    checks = audit_result(g, res, level, oracle)
    trace_text = res.state.trace.dumps()
    rec.update(
        guaranteed_size=res.guaranteed_size,
        achieved_size=res.achieved_size,
        minor=res.minor.to_json(),
        notes=res.notes,
        invariant_audit=checks,
        trace=res.state.trace.digest(),
        status="ok" if all(c["ok"] for c in checks) else "audit_failed",
    )
    return rec, trace_text


def _run_task(args):
    index, source, code, algorithm, level, oracle, budget = args
    rec, trace = run_one(parse_graph6(code), algorithm, level, oracle, budget)
    rec = {"index": index, "source": source, **rec}
    return rec, trace


def run_experiments(spec: ExperimentSpec) -> Report:
    if spec.audit not in AUDIT_LEVELS:
        raise ValueError(f"audit level must be one of {AUDIT_LEVELS}")
    tasks = []
    for index, (source, g) in enumerate(expand_graphs(spec.graphs)):
        for algorithm in spec.algorithms():
            tasks.append((index, source, serialize_graph6(g), algorithm, spec.audit, spec.oracle, spec.budget))
    if spec.workers > 1:
        with ProcessPoolExecutor(spec.workers) as pool:
            results = list(pool.map(_run_task, tasks, chunksize=16))
    else:
        results = [_run_task(t) for t in tasks]
    report = Report(spec.to_json())
    for rec, trace in results:
        report.records.append(rec)
        if trace is not None:
            report.traces[rec["trace"]] = trace
    return report


def verify_report(path: str | Path) -> list[tuple[int, bool, str]]:
    """Re-check every certificate in a saved report independently of the run."""
    doc = json.loads(Path(path).read_text())
    out = []
    for rec in doc["records"]:
        if "minor" not in rec:
            continue
        g = parse_graph6(rec["graph6"])
        v = verify_minor(g, MinorCertificate.from_json(rec["minor"]))
        ok = v.ok and len(rec["minor"]["branch_sets"]) == rec["achieved_size"]
        out.append((rec["index"], ok, v.reason))
    return out


# ---------------------------------------------------------------------------
# tables

RECORD_COLUMNS = ("index", "algorithm", "n", "m", "alpha", "guaranteed_size", "achieved_size", "status")


def records_csv(records: list[dict]) -> str:
    buf = _io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(RECORD_COLUMNS)
    for r in records:
        w.writerow([r.get(c, "") for c in RECORD_COLUMNS])
    return buf.getvalue()


def bounds_table(alpha_max: int = 300) -> list[dict]:
    rows = []
    for a in range(1, alpha_max + 1):
        r = bound_r(a)
        rows.append({"alpha": a, "two_alpha_minus_1": 2 * a - 1, "two_alpha_minus_2": 2 * a - 2,
                     "r": r, "r_beats_2a_minus_2": r < 2 * a - 2})
    return rows


def bounds_csv(rows: list[dict]) -> str:
    buf = _io.StringIO()
    w = csv.DictWriter(buf, fieldnames=list(rows[0]), lineterminator="\n")
    w.writeheader()
    w.writerows(rows)
    return buf.getvalue()


def bounds_markdown(rows: list[dict]) -> str:
    head = "| alpha | 2a-1 | 2a-2 | r | r < 2a-2 |\n|---:|---:|---:|---:|:---:|"
    body = [
        f"| {r['alpha']} | {r['two_alpha_minus_1']} | {r['two_alpha_minus_2']} | {r['r']} | {'yes' if r['r_beats_2a_minus_2'] else ''} |"
        for r in rows
    ]
    return "\n".join([head, *body]) + "\n"
