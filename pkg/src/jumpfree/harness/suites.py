"""Seeded property suites over random instances.

Each suite is a per-trial function ``(seed, trial, opts) -> TrialOutcome``;
:func:`run_suite` maps it over trials (optionally in worker processes) and
aggregates in trial order, so results do not depend on ``jobs``.
"""
from __future__ import annotations

import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from ..graph import build_induced
from ..labelers import MaxRho, MinRho, SeededRho, h_rho, s_hat, t_hat
from ..lattice import Cube, cap_restrict, is_capped_by
from ..regularity import (candidate_cubes, check_regularity, find_regular_cube,
                          jump_free_check, sample_jump_free_pair)
from .generators import (cube_domain, cube_rich_instance, random_graph_instance,
                         trial_seed, _rules)

MAX_REPORTED = 8


@dataclass
class TrialOutcome:
    checked: int = 0
    violations: list = field(default_factory=list)
    finds: int = 0


@dataclass
class SuiteResult:
    name: str
    trials: int
    checked: int
    finds: int
    violation_count: int
    violations: list

    @property
    def passed(self) -> bool:
        return self.violation_count == 0

    @property
    def status(self) -> str:
        if self.trials == 0:
            return "no data"
        return "pass" if self.passed else "fail"

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "status": self.status,
            "trials": self.trials,
            "checked": self.checked,
            "finds": self.finds,
            "violationCount": self.violation_count,
            "violations": self.violations,
        }


def _pt(x):
    return list(x)


def _three_rhos(seed):
    return [MinRho(), MaxRho(), SeededRho(6, seed)]


def off_by_one(h_fn):
    """Wrap a labeler so the first vertex with a defined selection is off by one."""
    def faulty(G, F, rho, **kw):
        h = h_fn(G, F, rho, **kw)
        for z in h.domain.sorted:
            if not h.phi_empty[z]:
                h.values[z] += 1
                break
        return h
    return faulty


# -- per-trial checks ------------------------------------------------------------------

def trial_s_structure(seed, i, opts):
    inst = random_graph_instance(trial_seed(seed, i, 1), **opts.get("gen", {}))
    s = s_hat(inst.graph, inst.selection)
    out = TrialOutcome()
    for z in inst.domain.sorted:
        out.checked += 1
        ok = s[z] <= max(z) and ((s[z] == max(z)) == s.phi_empty[z])
        if not ok:
            out.violations.append({"trial": i, "z": _pt(z), "value": s[z], "phiEmpty": s.phi_empty[z]})
    return out


def trial_rho_equivalence(seed, i, opts):
    inst = random_graph_instance(trial_seed(seed, i, 1), **opts.get("gen", {}))
    h_fn = off_by_one(h_rho) if opts.get("fault") else h_rho
    G, F = inst.graph, inst.selection
    s = s_hat(G, F)
    out = TrialOutcome()
    for rho in _three_rhos(trial_seed(seed, i, 2)):
        h = h_fn(G, F, rho)
        for z in inst.domain.sorted:
            out.checked += 1
            if s.phi_empty[z] != h.phi_empty[z]:
                why = "phiEmpty differs"
            elif not s.phi_empty[z] and s[z] != h[z]:
                why = "values differ"
            elif s.phi_empty[z] and h[z] != rho(inst.domain, z):
                why = "h differs from rho"
            else:
                continue
            out.violations.append({"trial": i, "rho": rho.name, "z": _pt(z),
                                   "s": s[z], "h": h[z], "why": why})
    return out


def _kk_violation(rep, k, where):
    if rep.is_regular and len(rep.regressive_values) > k ** k:
        return {"where": where, "E": list(rep.cube.base),
                "regressiveValues": sorted(rep.regressive_values)}
    return None


def trial_regularity_agreement(seed, i, opts):
    inst = cube_rich_instance(trial_seed(seed, i, 3), **opts.get("gen", {}))
    G, F = inst.graph, inst.selection
    s = s_hat(G, F)
    hs = [h_rho(G, F, rho) for rho in _three_rhos(trial_seed(seed, i, 4))]
    out = TrialOutcome()
    for E in candidate_cubes(inst.domain, opts.get("p", 2)):
        rs = check_regularity(s, E)
        out.checked += 1
        out.finds += rs.is_regular
        for h in hs:
            rh = check_regularity(h, E)
            if rh.is_regular != rs.is_regular:
                out.violations.append({"trial": i, "E": list(E.base),
                                       "sRegular": rs.is_regular, "hRegular": rh.is_regular})
            for rep, where in ((rs, "s_hat"), (rh, "h_rho")):
                v = _kk_violation(rep, 2, where)
                if v:
                    out.violations.append({"trial": i, **v})
    return out


def _jump_free(seed, i, opts, family):
    inst = random_graph_instance(trial_seed(seed, i, 5), **opts.get("gen", {}))
    rng = random.Random(trial_seed(seed, i, 6))
    B = inst.domain
    A, x = sample_jump_free_pair(B, rng, thin=opts.get("thin", 0.0))
    GA, GB = build_induced(inst.rule, A), build_induced(inst.rule, B)
    if family == "t_hat":
        fA, fB = t_hat(GA), t_hat(GB)
    else:
        fA = s_hat(GA, inst.selection, keep_phi=True)
        fB = s_hat(GB, inst.selection, keep_phi=True)
    res = jump_free_check(fA, A, fB, B)
    out = TrialOutcome()
    antecedent_at_x = A.below(x) <= B.below(x) and all(fA[y] == fB[y] for y in A.below(x))
    out.checked = int(antecedent_at_x)
    for z, a, b in res.witnesses:
        out.violations.append({"trial": i, "family": family, "x": _pt(z), "fA": a, "fB": b})
    if family == "s_hat":
        for z in sorted(A.points & B.points):
            Az = A.below(z)
            if Az <= B.below(z) and all(fA[y] == fB[y] for y in Az):
                if not fA.phi[z] <= fB.phi[z]:
                    out.violations.append({"trial": i, "family": family, "x": _pt(z),
                                           "why": "Phi_A not inside Phi_B"})
    return out


def trial_jumpfree_t(seed, i, opts):
    return _jump_free(seed, i, opts, "t_hat")


def trial_jumpfree_s(seed, i, opts):
    return _jump_free(seed, i, opts, "s_hat")


def trial_capped_transfer(seed, i, opts):
    """Search h_rho for a regular E; if found, cap-restrict and recheck."""
    inst = cube_rich_instance(trial_seed(seed, i, 7), **opts.get("gen", {}))
    G, F, rho = inst.graph, inst.selection, inst.rho
    D = inst.domain
    found = find_regular_cube(lambda dom: h_rho(G, F, rho), D, opts.get("p", 2))
    out = TrialOutcome()
    if not found.found:
        return out
    out.finds = 1
    out.checked = 1
    E = found.cube
    v = _kk_violation(found.report, 2, "h_rho")
    if v:
        out.violations.append({"trial": i, **v})
    Dh = cap_restrict(D, E)
    if not (E.points <= Dh.points and is_capped_by(Dh, E)):
        out.violations.append({"trial": i, "E": list(E.base), "why": "cap_restrict not capped"})
        return out
    h2 = h_rho(build_induced(inst.rule, Dh), F, rho)
    rep = check_regularity(h2, E)
    if not rep.is_regular:
        out.violations.append({"trial": i, "E": list(E.base), "why": "regularity lost on cap"})
    return out


def trial_kk_bound(seed, i, opts):
    """Search t_hat, s_hat and h_rho on cube-containing domains (k in {2, 3})."""
    rng = random.Random(trial_seed(seed, i, 8))
    k = rng.choice([2, 3])
    p = rng.choice([2, 3]) if k == 2 else 2
    base = tuple(sorted(rng.sample(range(1, 9), p)))
    D = cube_domain(rng, Cube(base, k), extra=rng.randint(0, 20 if k == 2 else 12))
    rule, F = _rules(rng, rng.randint(1, 2))
    G = build_induced(rule, D)
    out = TrialOutcome()
    rho = SeededRho(5, rng.getrandbits(32))
    labelings = {"t_hat": t_hat(G), "s_hat": s_hat(G, F), "h_rho": h_rho(G, F, rho)}
    for name, f in labelings.items():
        res = find_regular_cube(None, D, p, labeling=f)
        if res.found:
            out.finds += 1
            out.checked += 1
            v = _kk_violation(res.report, k, name)
            if v:
                out.violations.append({"trial": i, **v})
    return out


SUITES = {
    "s_structure": trial_s_structure,
    "rho_equivalence": trial_rho_equivalence,
    "regularity_agreement": trial_regularity_agreement,
    "jumpfree_t": trial_jumpfree_t,
    "jumpfree_s": trial_jumpfree_s,
    "capped_transfer": trial_capped_transfer,
    "kk_bound": trial_kk_bound,
}


def _chunk(args):
    name, seed, lo, hi, opts = args
    fn = SUITES[name]
    return [fn(seed, i, opts) for i in range(lo, hi)]


def run_suite(name, trials, seed, opts=None, jobs=1) -> SuiteResult:
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}")
    opts = dict(opts or {})
    if jobs > 1 and trials > 1:
        step = max(1, -(-trials // (jobs * 4)))
        chunks = [(name, seed, lo, min(lo + step, trials), opts) for lo in range(0, trials, step)]
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            outcomes = [o for part in pool.map(_chunk, chunks) for o in part]
    else:
        outcomes = _chunk((name, seed, 0, trials, opts))
    violations = [v for o in outcomes for v in o.violations]
    return SuiteResult(
        name=name,
        trials=trials,
        checked=sum(o.checked for o in outcomes),
        finds=sum(o.finds for o in outcomes),
        violation_count=len(violations),
        violations=violations[:MAX_REPORTED],
    )
