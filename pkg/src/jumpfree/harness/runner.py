"""Run stages (label, search, verify, solve, bench) and persist run records.

A run record is a JSON document whose content, apart from ``timings``, is a
pure function of the config, so identical configs give identical records.
"""
from __future__ import annotations

import csv
import io
import json
import math
import platform
import random
import time
from pathlib import Path

import jsonschema

from .. import __version__
from .._mix import mix
from ..graph import ExplicitEdges, build_induced
from ..labelers import Labeling, MinIndex, h_rho, min_coordinate, s_hat, t_hat
from ..lattice import Cube, Domain, cap_restrict, is_capped_by, rank_vector
from ..regularity import check_regularity, find_regular_cube
from ..subsetsum import (InstanceSet, PreconditionError, TLogRho, ZeroI, build_instances,
                         solve_oracle, solve_structured, structured_diagnosis)
from . import rules
from .config import ALL_PROPERTIES, ExperimentConfig
from .generators import cube_domain, random_domain
from .suites import run_suite

RECORD_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "type": "object",
    "properties": {
        "schema": {"const": "jumpfree.run/1"},
        "command": {"enum": ["label", "search", "verify", "solve", "bench"]},
        "configHash": {"type": "string", "pattern": "^[0-9a-f]{16}$"},
        "config": {"type": "object"},
        "outputs": {"type": "object"},
        "checks": {
            "type": "array",
            "items": {
                "type": "object",
                "properties": {
                    "name": {"type": "string"},
                    "passed": {"type": "boolean"},
                    "detail": {},
                },
                "required": ["name", "passed"],
                "additionalProperties": False,
            },
        },
        "passed": {"type": "boolean"},
        "timings": {"type": "object", "additionalProperties": {"type": "number"}},
        "versions": {"type": "object", "additionalProperties": {"type": "string"}},
    },
    "required": ["schema", "command", "configHash", "config", "outputs", "checks",
                 "passed", "timings", "versions"],
    "additionalProperties": False,
}


class RunRecord:
    def __init__(self, command: str, cfg: ExperimentConfig):
        self.command = command
        self.cfg = cfg
        self.outputs = {}
        self.checks = []
        self.timings = {}
        self.extra_files = {}

    def check(self, name, passed, detail=None):
        row = {"name": name, "passed": bool(passed)}
        if detail is not None:
            row["detail"] = detail
        self.checks.append(row)

    @property
    def passed(self) -> bool:
        return all(c["passed"] for c in self.checks)

    def timed(self, name):
        rec = self

        class _T:
            def __enter__(self):
                self.t0 = time.perf_counter()

            def __exit__(self, *exc):
                rec.timings[name] = round((time.perf_counter() - self.t0) * 1000, 3)

        return _T()

    def to_json(self) -> dict:
        return {
            "schema": "jumpfree.run/1",
            "command": self.command,
            "configHash": self.cfg.config_hash,
            "config": self.cfg.raw,
            "outputs": self.outputs,
            "checks": self.checks,
            "passed": self.passed,
            "timings": self.timings,
            "versions": {"jumpfree": __version__, "python": platform.python_version()},
        }

    def content(self) -> str:
        """Canonical JSON without timings; the reproducibility contract."""
        doc = self.to_json()
        doc.pop("timings")
        return dumps(doc)

    def validate(self):
        jsonschema.validate(self.to_json(), RECORD_SCHEMA)

    def write(self, out_dir) -> Path:
        self.validate()
        run_dir = Path(out_dir) / self.cfg.config_hash
        run_dir.mkdir(parents=True, exist_ok=True)
        path = run_dir / f"{self.command}.json"
        path.write_text(dumps(self.to_json()))
        for name, text in self.extra_files.items():
            (run_dir / name).write_text(text)
        return path


def dumps(doc) -> str:
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"


# -- building blocks from a config ------------------------------------------------------

def build_domain(cfg: ExperimentConfig) -> Domain:
    spec = cfg.domain
    rng = random.Random(mix(cfg.seed, 0xD0))
    if spec["kind"] == "explicit":
        return Domain(spec["points"], cfg.k)
    if spec["kind"] == "random":
        return random_domain(rng, cfg.k, spec["size"], spec["coordMax"])
    return cube_domain(rng, Cube(tuple(spec["E"]), cfg.k), spec.get("extra", 0),
                       spec.get("density", 1.0))


def build_pipeline(cfg: ExperimentConfig, D: Domain | None = None):
    D = build_domain(cfg) if D is None else D
    rule = rules.edge_rule(cfg.edge_rule)
    F = rules.selection(cfg.selection)
    rho = rules.rho(cfg.rho_rule)
    return D, rule, F, rho


def family_labeler(cfg, rule, F, rho):
    cap = cfg.budgets.tuple_cap
    name = cfg.family

    def label(D):
        if name == "min":
            return min_coordinate(D)
        G = build_induced(rule, D)
        if name == "t_hat":
            return t_hat(G)
        if name == "s_hat":
            return s_hat(G, F, tuple_cap=cap)
        return h_rho(G, F, rho, tuple_cap=cap)

    return label


def _compare_expected(rec, label: Labeling, expected, name):
    bad = []
    for x, v in expected:
        x = tuple(x)
        got = label.values.get(x)
        if got != v:
            bad.append({"z": list(x), "expected": v, "got": got})
    rec.check(f"expect.{name}", not bad, bad or None)


# -- stages -----------------------------------------------------------------------------

def run_label(cfg: ExperimentConfig) -> RunRecord:
    rec = RunRecord("label", cfg)
    D, rule, F, rho = build_pipeline(cfg)
    cap = cfg.budgets.tuple_cap
    with rec.timed("graph"):
        G = build_induced(rule, D)
    with rec.timed("labelings"):
        labels = {
            "t_hat": t_hat(G),
            "s_hat": s_hat(G, F, tuple_cap=cap),
            "h_rho": h_rho(G, F, rho, tuple_cap=cap),
        }
    rec.outputs = {
        "graph": G.to_json(),
        "rules": {"edge": rule.descriptor(), "selection": F.descriptor(), "rho": rho.descriptor()},
        "labelings": {name: lab.to_json() for name, lab in labels.items()},
    }
    for name, expected in sorted(cfg.expect.items()):
        _compare_expected(rec, labels[name], expected, name)
    return rec


def run_search(cfg: ExperimentConfig) -> RunRecord:
    rec = RunRecord("search", cfg)
    D, rule, F, rho = build_pipeline(cfg)
    with rec.timed("search"):
        res = find_regular_cube(family_labeler(cfg, rule, F, rho), D, cfg.p,
                                cfg.budgets.candidate_cap)
    rec.outputs = {"family": cfg.family, "p": cfg.p, "search": res.to_json()}
    if res.found:
        n = len(res.report.regressive_values)
        rec.check("kk_bound", n <= cfg.k ** cfg.k, {"regressiveValues": n, "bound": cfg.k ** cfg.k})
    return rec


def run_verify(cfg: ExperimentConfig, jobs: int = 1) -> RunRecord:
    rec = RunRecord("verify", cfg)
    v = cfg.verify
    trials = v.get("trials", 100)
    gen = {}
    if "sizeMax" in v:
        gen["size_max"] = v["sizeMax"]
    if "rMax" in v:
        gen["r_max"] = v["rMax"]
    if "kChoices" in v:
        gen["k_choices"] = tuple(v["kChoices"])
    suites = {}
    for name in v.get("properties", ALL_PROPERTIES):
        opts = {}
        if name in ("s_structure", "rho_equivalence", "jumpfree_t", "jumpfree_s"):
            opts["gen"] = gen
        if name.startswith("jumpfree"):
            opts["thin"] = v.get("thin", 0.0)
        if name == "rho_equivalence" and v.get("fault"):
            opts["fault"] = True
        with rec.timed(name):
            res = run_suite(name, trials, cfg.seed, opts, jobs=jobs)
        suites[name] = res.to_json()
        rec.check(name, res.passed, {"status": res.status, "trials": res.trials,
                                     "checked": res.checked})
    rec.outputs = {"suites": suites}
    return rec


def _regular_instances(cfg, rec):
    """Search, cap-restrict, relabel and build the instance set."""
    D, rule, F, rho = build_pipeline(cfg)
    cap = cfg.budgets.tuple_cap
    labeler = lambda dom: h_rho(build_induced(rule, dom), F, rho, tuple_cap=cap)
    found = find_regular_cube(labeler, D, cfg.p, cfg.budgets.candidate_cap)
    rec.outputs["search"] = found.to_json()
    if not found.found:
        raise PreconditionError("no regressively regular cube found; nothing to solve")
    E = found.cube
    Dh = cap_restrict(D, E)
    h = labeler(Dh)
    rep = check_regularity(h, E)
    rec.check("capped_transfer", is_capped_by(Dh, E) and rep.is_regular)
    i_rule = rules.i_rule(cfg.i_rule)
    return build_instances(h, rho, i_rule, E)


def run_solve(cfg: ExperimentConfig) -> RunRecord:
    rec = RunRecord("solve", cfg)
    src = cfg.solve.get("instances")
    if src:
        H = InstanceSet.from_json(json.loads(Path(src).read_text()))
    else:
        H = _regular_instances(cfg, rec)
    k, t, p = H.k, cfg.t, H.p
    rec.outputs["instances"] = H.to_json()
    problems = structured_diagnosis(H, k, t, p)
    if problems:
        rec.outputs["structured"] = {"refused": True, "diagnosis": problems}
        raise PreconditionError("structured solver refused: " + "; ".join(problems))
    with rec.timed("structured"):
        rs = solve_structured(H, k, t, p, exhaustive=cfg.solve.get("exhaustive", False))
    rec.outputs["structured"] = rs.to_json()
    bound = 2 ** (k ** k) * p ** (k * t)
    rec.check("comparison_bound", rs.comparisons <= bound, {"comparisons": rs.comparisons,
                                                           "bound": bound})
    if len(H) <= cfg.budgets.solver_cap:
        with rec.timed("oracle"):
            ro = solve_oracle(H, cfg.budgets.solver_cap)
        rec.outputs["oracle"] = ro.to_json()
        rec.check("solver_agreement", ro.solvable == rs.solvable)
    else:
        rec.outputs["oracle"] = {"skipped": f"{len(H)} values exceed solverCap"}
    return rec


# -- scaling bench ----------------------------------------------------------------------

def bench_instance(p: int, k: int = 2, t: int = 1, seed: int = 0, e0: int = 10,
                   step: int = 3, low: int = 3):
    """A capped configuration whose h_rho is regular by construction.

    D = E^k plus the diagonal point w = (low, ..., low). Every strictly
    increasing point of E^k has the single edge to w, so with min-index
    selection it takes min(w) = low < e0; every other cube point keeps rho.
    rho is t-log designed with its small differences on the non-increasing
    points. Returns ``(D, E, G, F, rho)``.
    """
    E = Cube(tuple(e0 + step * i for i in range(p)), k)
    w = (low,) * k
    D = Domain(set(E.points) | {w}, k)
    incr = lambda x: rank_vector(x) == tuple(range(k))
    edges = [(x, w) for x in sorted(E.points) if incr(x)]
    G = build_induced(ExplicitEdges(edges, strict=True), D)
    support = [x for x in sorted(E.points) if not incr(x)]
    rho = TLogRho(t, seed, support)
    return D, E, G, MinIndex(1), rho


def bench_rows(ps, k=2, t=1, seed=0):
    rows = []
    for p in ps:
        D, E, G, F, rho = bench_instance(p, k, t, seed)
        t0 = time.perf_counter()
        h = h_rho(G, F, rho)
        rep = check_regularity(h, E)
        H = build_instances(h, rho, ZeroI(), E)
        res = solve_structured(H, k, t, p, exhaustive=True)
        wall = (time.perf_counter() - t0) * 1000
        rows.append({
            "p": p,
            "comparisons": res.comparisons,
            "bound": 2 ** (k ** k) * p ** (k * t),
            "regular": rep.is_regular,
            "solvable": res.solvable,
            "instanceSize": len(H),
            "wallMillis": round(wall, 3),
        })
    return rows


def loglog_slope(xs, ys) -> float:
    lx = [math.log(x) for x in xs]
    ly = [math.log(y) for y in ys]
    mx, my = sum(lx) / len(lx), sum(ly) / len(ly)
    num = sum((a - mx) * (b - my) for a, b in zip(lx, ly))
    den = sum((a - mx) ** 2 for a in lx)
    return num / den


def run_bench(cfg: ExperimentConfig) -> RunRecord:
    rec = RunRecord("bench", cfg)
    b = cfg.bench
    ps = b.get("ps", [4, 8, 16, 32])
    k, t = b.get("k", 2), b.get("t", 1)
    with rec.timed("bench"):
        rows = bench_rows(ps, k, t, cfg.seed)
    for row in rows:
        rec.timings[f"p{row['p']}"] = row["wallMillis"]
    stable = [{key: v for key, v in row.items() if key != "wallMillis"} for row in rows]
    rec.outputs = {"k": k, "t": t, "rows": stable}
    rec.check("regular", all(r["regular"] for r in rows))
    rec.check("comparison_bound", all(r["comparisons"] <= r["bound"] for r in rows))
    if len(rows) >= 2:
        slope = loglog_slope([r["p"] for r in rows], [max(r["comparisons"], 1) for r in rows])
        rec.outputs["slope"] = round(slope, 6)
        lo, hi = k * t - 0.5, k * t + 0.5
        rec.check("slope", lo <= slope <= hi, {"slope": round(slope, 6), "range": [lo, hi]})
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["p", "comparisons", "wallMillis"])
    for r in rows:
        w.writerow([r["p"], r["comparisons"], r["wallMillis"]])
    rec.extra_files["bench.csv"] = buf.getvalue()
    return rec
