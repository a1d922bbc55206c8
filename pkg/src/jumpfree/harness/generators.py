"""Seeded generators for domains, graphs and instance sets.

Every generator takes an explicit seed (or ``random.Random``) and is
deterministic in it. Per-trial seeds come from :func:`trial_seed`, so trials
can run in any order or in parallel.
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass

from .._mix import mix
from ..graph import CoordinateDominance, DownwardGraph, EdgeRule, SeededRandomEdges, build_induced
from ..labelers import (DEFAULT_TUPLE_CAP, MaxRho, MinDominantFamily, MinIndex, MinRho,
                        PartialSelection, SeededChoice, SeededRho)
from ..lattice import Cube, Domain
from ..subsetsum import InstanceSet, log_budget


def trial_seed(seed: int, trial: int, salt: int = 0) -> int:
    return mix(seed, trial, salt) & 0xFFFFFFFF


def random_domain(rng: random.Random, k: int, size: int, coord_max: int) -> Domain:
    side = coord_max + 1
    size = min(size, side ** k)
    codes = rng.sample(range(side ** k), size)
    pts = []
    for c in codes:
        x = []
        for _ in range(k):
            c, d = divmod(c, side)
            x.append(d)
        pts.append(tuple(x))
    return Domain(pts, k)


def cube_domain(rng: random.Random, E: Cube, extra: int, density: float = 1.0) -> Domain:
    """E^k plus up to ``extra`` random points strictly below max(E), so capped by E^k."""
    pts = set(E.points)
    side = E.top
    if side > 0 and extra:
        pool = [x for x in itertools.product(range(side), repeat=E.k)]
        rng.shuffle(pool)
        pts.update(x for x in pool[:extra] if rng.random() < density)
    return Domain(pts, E.k)


@dataclass
class GraphInstance:
    graph: DownwardGraph
    rule: EdgeRule
    selection: PartialSelection
    rho: MinDominantFamily
    seed: int

    @property
    def domain(self) -> Domain:
        return self.graph.domain


def _rules(rng, r):
    if rng.random() < 0.8:
        rule = SeededRandomEdges(rng.choice([0.1, 0.2, 0.35, 0.5]), rng.getrandbits(32))
    else:
        rule = CoordinateDominance()
    if rng.random() < 0.85:
        F = SeededChoice(r, rng.choice([0.3, 0.6, 0.9]), rng.getrandbits(32))
    else:
        F = MinIndex(r)
    return rule, F


def pick_rho(rng, kind="any"):
    if kind == "any":
        kind = rng.choice(["min", "max", "seeded"])
    if kind == "min":
        return MinRho()
    if kind == "max":
        return MaxRho()
    return SeededRho(rng.choice([1, 4, 16]), rng.getrandbits(32))


def _fits(G, F, cap):
    return all(len(G.adjacency(z)) ** F.r <= cap for z in G.domain.points)


def random_graph_instance(seed: int, *, k_choices=(2, 3), size_max=40, r_max=3,
                          rho_kind="any", tuple_cap=DEFAULT_TUPLE_CAP) -> GraphInstance:
    """Random domain with a seeded edge rule, selection and rho.

    Draws are repeated (deterministically) until every committee count fits
    the tuple cap.
    """
    for attempt in itertools.count():
        rng = random.Random(mix(seed, attempt, 0x6A))
        k = rng.choice(list(k_choices))
        size = rng.randint(1, size_max)
        coord_max = rng.choice([3, 5, 8, 12])
        D = random_domain(rng, k, size, coord_max)
        r = rng.randint(1, r_max)
        rule, F = _rules(rng, r)
        G = build_induced(rule, D)
        if _fits(G, F, tuple_cap):
            return GraphInstance(G, rule, F, pick_rho(rng, rho_kind), seed)
    raise AssertionError("unreachable")


def cube_rich_instance(seed: int, *, field_max=8, coord_max=11, r_max=3,
                       rho_kind="any", tuple_cap=DEFAULT_TUPLE_CAP) -> GraphInstance:
    """k=2 domain over a field of at most ``field_max`` values, seeded with a few
    full squares E^2 so that candidate cubes exist."""
    for attempt in itertools.count():
        rng = random.Random(mix(seed, attempt, 0xC0BE))
        fld = sorted(rng.sample(range(coord_max + 1), rng.randint(2, field_max)))
        pts = set()
        for _ in range(rng.randint(1, 3)):
            E = Cube(tuple(rng.sample(fld, 2)), 2)
            pts |= E.points
        dens = rng.choice([0.2, 0.4, 0.7])
        pts |= {x for x in itertools.product(fld, repeat=2) if rng.random() < dens}
        D = Domain(pts, 2)
        r = rng.randint(1, r_max)
        rule, F = _rules(rng, r)
        G = build_induced(rule, D)
        if _fits(G, F, tuple_cap):
            return GraphInstance(G, rule, F, pick_rho(rng, rho_kind), seed)
    raise AssertionError("unreachable")


def random_structured_instance(seed: int, *, lo=-100, hi=100, size_max=24) -> tuple:
    """An InstanceSet meeting the structured solver's preconditions.

    Returns ``(H, k, t, p)``. Values stay inside [lo, hi].
    """
    rng = random.Random(mix(seed, 0x55))
    k = 2
    kk = k ** k
    e0 = rng.randint(2, min(-lo, hi // kk))
    window = e0 * kk
    t = rng.randint(1, 2)
    p = rng.choice([3, 4, 5, 6, 8])
    n_small = min(log_budget(p, k, t), window - 1, size_max - 1)
    n_neg = rng.randint(0, kk - 1)
    # fewer than k^k distinct magnitudes below e0, so the total stays below e0 * k^k
    n_neg = min(n_neg, e0 - 1)
    neg = {-v for v in rng.sample(range(1, e0), n_neg)}
    small = set(rng.sample(range(1, window), rng.randint(0, n_small)))
    if rng.random() < 0.1:
        small.add(0)
    room = size_max - len(neg) - len(small)
    n_large = rng.randint(0, max(0, min(room, hi - window + 1)))
    large = set(rng.sample(range(window, hi + 1), n_large)) if n_large else set()
    H = InstanceSet.of(neg, (), small | large, e0=e0, k=k, p=p)
    return H, k, t, p
