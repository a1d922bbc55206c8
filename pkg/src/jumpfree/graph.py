"""Downward directed lattice graphs and their induced subgraphs.

A graph on N^k is given by an :class:`EdgeRule`, a predicate on ordered point
pairs. Inducing it on a finite domain D gives a :class:`DownwardGraph` with
adjacency precomputed. Every edge strictly lowers the max coordinate.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property

from ._mix import unit
from .lattice import Domain, DomainError, Point


class DownwardViolation(ValueError):
    pass


def is_downward(x, y) -> bool:
    return max(x) > max(y)


class EdgeRule:
    """Base edge rule. Subclasses implement :meth:`raw`.

    ``strict`` rules raise on a raw pair that is not downward instead of
    dropping it.
    """

    name = "rule"
    seed = None

    def __init__(self, strict: bool = False):
        self.strict = strict

    def raw(self, x: Point, y: Point) -> bool:
        raise NotImplementedError

    def __call__(self, x, y) -> bool:
        return is_downward(x, y) and self.raw(tuple(x), tuple(y))

    def params(self) -> dict:
        return {}

    def descriptor(self) -> dict:
        d = {"name": self.name, "params": self.params()}
        if self.seed is not None:
            d["seed"] = self.seed
        return d

    def candidate_pairs(self, domain: Domain):
        pts = domain.sorted
        if self.strict:
            return ((x, y) for x in pts for y in pts if x != y)
        return ((x, y) for x in pts for y in pts if max(x) > max(y))

    def __repr__(self):
        return f"{type(self).__name__}({self.descriptor()})"


class ExplicitEdges(EdgeRule):
    name = "explicit"

    def __init__(self, edges=(), strict: bool = False):
        super().__init__(strict)
        self.edges = frozenset((tuple(x), tuple(y)) for x, y in edges)

    def raw(self, x, y):
        return (x, y) in self.edges

    def params(self):
        return {"edges": [[list(x), list(y)] for x, y in sorted(self.edges)]}

    def candidate_pairs(self, domain):
        return ((x, y) for x, y in sorted(self.edges) if x in domain and y in domain)


class FullDownward(EdgeRule):
    name = "full-downward"

    def raw(self, x, y):
        return max(x) > max(y)


class SeededRandomEdges(EdgeRule):
    """Each downward pair is an edge independently with probability ``density``."""

    name = "seeded-random"

    def __init__(self, density: float, seed: int, strict: bool = False):
        super().__init__(strict)
        if not 0.0 <= density <= 1.0:
            raise ValueError("density must lie in [0, 1]")
        self.density = density
        self.seed = seed

    def raw(self, x, y):
        return unit(self.seed, 0xED6E, x, y) < self.density

    def params(self):
        return {"density": self.density}


class CoordinateDominance(EdgeRule):
    """Edge iff every coordinate of x exceeds the matching coordinate of y."""

    name = "coordinate-dominance"

    def raw(self, x, y):
        return all(a > b for a, b in zip(x, y))


class PredicateRule(EdgeRule):
    """Wraps an arbitrary callable; not serializable by name."""

    name = "predicate"

    def __init__(self, fn, strict: bool = False, label: str = "predicate"):
        super().__init__(strict)
        self.fn = fn
        self.label = label

    def raw(self, x, y):
        return bool(self.fn(x, y))

    def params(self):
        return {"label": self.label}


@dataclass(frozen=True)
class DownwardGraph:
    domain: Domain
    edges: frozenset
    rule: EdgeRule | None = field(default=None, compare=False)

    def __post_init__(self):
        for x, y in self.edges:
            if x not in self.domain or y not in self.domain:
                raise DomainError(f"edge {(x, y)} leaves the domain")
            if not is_downward(x, y):
                raise DownwardViolation(f"edge {x} -> {y} does not lower max")

    @cached_property
    def _adj(self) -> dict[Point, frozenset[Point]]:
        out = {z: [] for z in self.domain.points}
        for x, y in self.edges:
            out[x].append(y)
        return {z: frozenset(ys) for z, ys in out.items()}

    def adjacency(self, z) -> frozenset[Point]:
        z = tuple(z)
        try:
            return self._adj[z]
        except KeyError:
            raise DomainError(f"{z} is not a vertex") from None

    def children(self, z) -> list[Point]:
        return sorted(self.adjacency(z))

    def to_json(self) -> dict:
        idx = self.domain.index
        return {
            "k": self.domain.k,
            "points": [list(p) for p in self.domain.sorted],
            "edges": sorted([idx[x], idx[y]] for x, y in self.edges),
        }

    @classmethod
    def from_json(cls, doc) -> DownwardGraph:
        D = Domain(doc["points"], doc["k"])
        pts = D.sorted
        return cls(D, frozenset((pts[i], pts[j]) for i, j in doc["edges"]))


def build_induced(rule: EdgeRule, D) -> DownwardGraph:
    """Subgraph induced on ``D`` by the graph that ``rule`` defines on N^k."""
    if not isinstance(D, Domain):
        D = Domain(D)
    edges = set()
    for x, y in rule.candidate_pairs(D):
        if not rule.raw(x, y):
            continue
        if is_downward(x, y):
            edges.add((x, y))
        elif rule.strict:
            raise DownwardViolation(f"rule {rule.name} proposes non-downward edge {x} -> {y}")
    return DownwardGraph(D, frozenset(edges), rule)


def adjacency(G: DownwardGraph, z) -> frozenset[Point]:
    return G.adjacency(z)


def layers(D) -> list[tuple[int, frozenset[Point]]]:
    """Bucket D by max coordinate, increasing."""
    pts = D.points if isinstance(D, Domain) else frozenset(map(tuple, D))
    if not pts:
        raise DomainError("layers of an empty domain")
    key = lambda z: max(z)
    ordered = sorted(pts, key=key)
    return [(m, frozenset(g)) for m, g in itertools.groupby(ordered, key=key)]


def terminal_vertices(G: DownwardGraph) -> frozenset[Point]:
    return frozenset(z for z in G.domain.points if not G.adjacency(z))
