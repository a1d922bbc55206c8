"""Regressive values, regressive regularity over a cube, and jump-freeness."""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from math import comb
from typing import NamedTuple

from .labelers import BudgetExceeded
from .lattice import Cube, Domain, Point, rank_vector, require_cube_in

DEFAULT_CANDIDATE_CAP = 50_000
MAX_WITNESSES = 8


@dataclass(frozen=True)
class ConstantBelowMin:
    value: int
    case = "const"


@dataclass(frozen=True)
class MinDominant:
    case = "minDom"


@dataclass(frozen=True)
class Neither:
    witnesses: tuple = ()
    case = "neither"


@dataclass(frozen=True)
class RegularityReport:
    cube: Cube
    classes: dict
    regressive_values: frozenset

    @property
    def is_regular(self) -> bool:
        return not any(isinstance(c, Neither) for c in self.classes.values())

    def to_json(self) -> dict:
        rows = []
        for ranks in sorted(self.classes):
            c = self.classes[ranks]
            row = {"ranks": list(ranks), "case": c.case}
            if isinstance(c, ConstantBelowMin):
                row["value"] = c.value
            elif isinstance(c, Neither):
                row["witnesses"] = [[list(x), v] for x, v in c.witnesses]
            rows.append(row)
        return {
            "E": list(self.cube.base),
            "regular": self.is_regular,
            "classes": rows,
            "regressiveValues": sorted(self.regressive_values),
        }


@dataclass(frozen=True)
class BlockPartition:
    E0: frozenset
    E1: frozenset
    E2: frozenset


def _domain_of(f):
    dom = getattr(f, "domain", None)
    return dom.points if isinstance(dom, Domain) else frozenset(f.keys())


def _require_cube(f, E: Cube):
    dom = getattr(f, "domain", None)
    if isinstance(dom, Domain):
        require_cube_in(dom, E)
    else:
        require_cube_in(Domain(_domain_of(f), E.k), E)


def regressive_values(f, X) -> frozenset[int]:
    return frozenset(f[x] for x in X if f[x] < min(x))


def order_type_classes(E: Cube) -> dict[tuple, list[Point]]:
    classes = {}
    for x in sorted(E.points):
        classes.setdefault(rank_vector(x), []).append(x)
    return classes


def classify(f, members, lo) -> object:
    vals = [f[x] for x in members]
    if vals[0] < lo and all(v == vals[0] for v in vals):
        return ConstantBelowMin(vals[0])
    if all(f[x] >= min(x) for x in members):
        return MinDominant()
    bad = [(x, f[x]) for x in members if f[x] < min(x)]
    return Neither(tuple(bad[:MAX_WITNESSES]))


def check_regularity(f, E: Cube) -> RegularityReport:
    _require_cube(f, E)
    classes = {ranks: classify(f, members, E.e0)
               for ranks, members in order_type_classes(E).items()}
    return RegularityReport(E, classes, regressive_values(f, E.points))


def partition_blocks(f, E: Cube) -> BlockPartition:
    _require_cube(f, E)
    e0, e1, e2 = set(), set(), set()
    for x in E.points:
        v = f[x]
        if v < E.e0:
            e0.add(x)
        elif v < min(x):
            e1.add(x)
        else:
            e2.add(x)
    return BlockPartition(frozenset(e0), frozenset(e1), frozenset(e2))


def candidate_cubes(D: Domain, p: int, cap: int = DEFAULT_CANDIDATE_CAP):
    """p-subsets E of field(D) with E^k inside D, in colexicographic order."""
    if p < 2:
        raise ValueError("p must be >= 2")
    fld = sorted(D.field)
    total = comb(len(fld), p)
    if total > cap:
        raise BudgetExceeded(f"C({len(fld)}, {p}) = {total} subsets exceed the cap {cap}")
    subsets = sorted(itertools.combinations(fld, p), key=lambda s: s[::-1])
    for base in subsets:
        E = Cube(base, D.k)
        if E.points <= D.points:
            yield E


@dataclass
class CubeSearch:
    cube: Cube | None
    report: RegularityReport | None
    candidates: int
    subsets: int
    failures: list = field(default_factory=list)

    @property
    def found(self) -> bool:
        return self.cube is not None

    def to_json(self) -> dict:
        return {
            "found": self.found,
            "E": None if self.cube is None else list(self.cube.base),
            "report": None if self.report is None else self.report.to_json(),
            "candidates": self.candidates,
            "subsets": self.subsets,
            "failures": [
                {"E": list(E.base), "neitherClasses": n} for E, n in self.failures
            ],
        }


def find_regular_cube(family, D: Domain, p: int, cap: int = DEFAULT_CANDIDATE_CAP,
                      labeling=None) -> CubeSearch:
    """First E (colex order) over which ``family(D)`` is regressively regular.

    Exhausting the candidates is a normal outcome.
    """
    subsets = comb(len(D.field), p)
    cands = list(candidate_cubes(D, p, cap))
    if not cands:
        return CubeSearch(None, None, 0, subsets)
    f = family(D) if labeling is None else labeling
    failures = []
    for E in cands:
        rep = check_regularity(f, E)
        if rep.is_regular:
            return CubeSearch(E, rep, len(cands), subsets, failures)
        failures.append((E, sum(isinstance(c, Neither) for c in rep.classes.values())))
    return CubeSearch(None, None, len(cands), subsets, failures)


class JumpFreeResult(NamedTuple):
    holds: bool
    witnesses: list
    checked: int


def jump_free_check(fA, A: Domain, fB, B: Domain) -> JumpFreeResult:
    """Check f_A(x) >= f_B(x) wherever the jump-free antecedent holds.

    ``checked`` counts the x at which the antecedent held.
    """
    witnesses = []
    checked = 0
    for x in sorted(A.points & B.points):
        Ax = A.below(x)
        if not Ax <= B.below(x):
            continue
        if any(fA[y] != fB[y] for y in Ax):
            continue
        checked += 1
        if fA[x] < fB[x]:
            witnesses.append((x, fA[x], fB[x]))
    return JumpFreeResult(not witnesses, witnesses, checked)


def sample_jump_free_pair(B: Domain, rng: random.Random, thin: float = 0.0):
    """Draw x in B and A = B_x + {x} + R with R a random set above x.

    With ``thin`` > 0 each point of B_x is dropped from A with that
    probability, so A_x is a proper subset and agreement has to be checked.
    """
    x = rng.choice(B.sorted)
    Bx = sorted(B.below(x))
    above = [z for z in B.sorted if max(z) > max(x)]
    R = [z for z in above if rng.random() < 0.5]
    keep = [z for z in Bx if rng.random() >= thin]
    return Domain(keep + [x] + R, B.k), x
