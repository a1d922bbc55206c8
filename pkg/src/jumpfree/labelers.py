"""Recursive labelings of a downward graph.

* :func:`t_hat` labels each vertex by the smallest min-coordinate among the
  terminal vertices it can reach (max coordinate for terminal vertices).
* :func:`s_hat` is the committee recursion: every r-tuple of out-neighbours
  reports values to a partial selection function, and a vertex takes the
  minimum of the defined selections, or its max coordinate if none is defined.
* :func:`h_rho` is the same recursion, but a vertex with no defined selection
  takes ``rho_D(z)`` from a min-dominant family.

Vertices are processed layer by layer in increasing max coordinate; a value
only depends on strictly lower layers.
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field

from ._mix import mix, splitmix64
from .graph import DownwardGraph, layers
from .lattice import Domain, Point

DEFAULT_TUPLE_CAP = 20_000
_INV53 = 1.0 / (1 << 53)


class BudgetExceeded(RuntimeError):
    pass


class MinDominanceError(ValueError):
    def __init__(self, point, value):
        super().__init__(f"rho({point}) = {value} < min{point}")
        self.point = point
        self.value = value


# -- partial selection functions ------------------------------------------------

class PartialSelection:
    """F[z, (y_1, n_1), ..., (y_r, n_r)] returning one of the n_i or nothing.

    Subclasses implement :meth:`select`, which returns a 0-based report index
    or None, so a defined value is always one of the reported values.
    """

    name = "selection"
    seed = None

    def __init__(self, r: int):
        if r < 1:
            raise ValueError("selection arity r must be >= 1")
        self.r = r

    def select(self, z: Point, reports) -> int | None:
        raise NotImplementedError

    def evaluate(self, z, reports) -> int | None:
        if len(reports) != self.r:
            raise ValueError(f"expected {self.r} reports, got {len(reports)}")
        i = self.select(z, reports)
        return None if i is None else reports[i][1]

    def params(self) -> dict:
        return {}

    def descriptor(self) -> dict:
        d = {"name": self.name, "params": {"r": self.r, **self.params()}}
        if self.seed is not None:
            d["seed"] = self.seed
        return d


class MinIndex(PartialSelection):
    name = "min-index"

    def select(self, z, reports):
        return min(range(len(reports)), key=lambda i: (reports[i][1], i))


class FixedIndex(PartialSelection):
    name = "fixed-index"

    def __init__(self, r, j):
        super().__init__(r)
        if not 0 <= j < r:
            raise ValueError(f"index {j} out of range for r={r}")
        self.j = j

    def select(self, z, reports):
        return self.j

    def params(self):
        return {"j": self.j}


class SeededChoice(PartialSelection):
    """Defined with probability ``q`` per (z, reports); picks a hashed index."""

    name = "seeded-choice"

    def __init__(self, r, q, seed):
        super().__init__(r)
        if not 0.0 <= q <= 1.0:
            raise ValueError("q must lie in [0, 1]")
        self.q = q
        self.seed = seed
        self._hz = {}
        self._hr = {}

    def select(self, z, reports):
        # chained per-report hashes; cached because the same reports recur
        # across many committees
        h = self._hz.get(z)
        if h is None:
            h = self._hz[z] = mix(self.seed, z)
        cache = self._hr
        for rep in reports:
            hr = cache.get(rep)
            if hr is None:
                hr = cache[rep] = mix(self.seed, 0x4E, rep)
            h = splitmix64(h ^ hr)
        if (h >> 11) * _INV53 >= self.q:
            return None
        return (h & 0xFFFF) % self.r

    def params(self):
        return {"q": self.q}


class TableSelection(PartialSelection):
    """Explicit invocations: ``{(z, reports): index}``; undefined elsewhere."""

    name = "table"

    def __init__(self, r, entries):
        super().__init__(r)
        table = {}
        for (z, reports), i in dict(entries).items():
            reports = tuple((tuple(y), int(n)) for y, n in reports)
            if len(reports) != r:
                raise ValueError(f"table entry at {z} has {len(reports)} reports, r={r}")
            if not 0 <= i < r:
                raise ValueError(f"table index {i} out of range")
            table[(tuple(z), reports)] = i
        self.table = table

    def select(self, z, reports):
        return self.table.get((tuple(z), tuple(reports)))

    def params(self):
        rows = []
        for (z, reports), i in sorted(self.table.items()):
            rows.append({"z": list(z), "reports": [[list(y), n] for y, n in reports], "index": i})
        return {"entries": rows}


def validate_selection(F, samples) -> tuple[bool, list]:
    """Replay invocations and check each defined result is one of the reports.

    ``samples`` is a sequence of ``(z, reports)`` pairs.
    """
    witnesses = []
    for z, reports in samples:
        v = F.evaluate(z, reports)
        if v is not None and v not in [n for _, n in reports]:
            witnesses.append((z, reports, v))
    return not witnesses, witnesses


# -- min-dominant initializers ----------------------------------------------------

class MinDominantFamily:
    """rho_D(x) >= min(x) for every finite D and x in D."""

    name = "rho"
    seed = None

    def __call__(self, D: Domain, x: Point) -> int:
        raise NotImplementedError

    def evaluate(self, D: Domain, points=None) -> dict[Point, int]:
        out = {}
        for x in D.sorted if points is None else points:
            v = self(D, x)
            if v < min(x):
                raise MinDominanceError(x, v)
            out[x] = v
        return out

    def params(self) -> dict:
        return {}

    def descriptor(self) -> dict:
        d = {"name": self.name, "params": self.params()}
        if self.seed is not None:
            d["seed"] = self.seed
        return d


class MinRho(MinDominantFamily):
    name = "min"

    def __call__(self, D, x):
        return min(x)


class MaxRho(MinDominantFamily):
    name = "max"

    def __call__(self, D, x):
        return max(x)


class OffsetTableRho(MinDominantFamily):
    """min(x) plus a per-point offset (default ``default``)."""

    name = "min-plus-offset-table"

    def __init__(self, offsets=None, default=0):
        self.offsets = {tuple(p): int(v) for p, v in dict(offsets or {}).items()}
        self.default = default

    def __call__(self, D, x):
        return min(x) + self.offsets.get(tuple(x), self.default)

    def params(self):
        return {
            "offsets": [[list(p), v] for p, v in sorted(self.offsets.items())],
            "default": self.default,
        }


class SeededRho(MinDominantFamily):
    """min(x) plus a hashed offset in [0, span]; independent of D."""

    name = "seeded"

    def __init__(self, span, seed):
        self.span = span
        self.seed = seed

    def __call__(self, D, x):
        return min(x) + mix(self.seed, 0x5EED, x) % (self.span + 1)

    def params(self):
        return {"span": self.span}


class FunctionRho(MinDominantFamily):
    name = "function"

    def __init__(self, fn, label="function"):
        self.fn = fn
        self.label = label

    def __call__(self, D, x):
        return self.fn(D, x)

    def params(self):
        return {"label": self.label}


# -- labelings ----------------------------------------------------------------------

@dataclass(frozen=True)
class Labeling:
    domain: Domain
    values: dict
    phi_empty: dict
    kind: str = "labeling"
    phi: dict | None = field(default=None, compare=False)

    def __getitem__(self, z):
        return self.values[tuple(z)]

    def __contains__(self, z):
        return tuple(z) in self.values

    def reported(self, z) -> int:
        """The value a vertex passes up to a committee."""
        z = tuple(z)
        return min(z) if self.phi_empty[z] else self.values[z]

    def to_json(self) -> dict:
        pts = self.domain.sorted
        return {
            "values": [[list(p), self.values[p]] for p in pts],
            "phiEmpty": [[list(p), self.phi_empty[p]] for p in pts],
        }

    @classmethod
    def from_json(cls, doc, k=None, kind="labeling") -> Labeling:
        values = {tuple(p): v for p, v in doc["values"]}
        empty = {tuple(p): b for p, b in doc["phiEmpty"]}
        return cls(Domain(values, k), values, empty, kind)


def t_hat(G: DownwardGraph) -> Labeling:
    # reach[z] = min over terminal vertices reachable from z of their min coordinate
    reach = {}
    values = {}
    empty = {}
    for _, layer in layers(G.domain):
        for z in layer:
            kids = G.adjacency(z)
            if not kids:
                reach[z] = min(z)
                values[z] = max(z)
                empty[z] = True
            else:
                reach[z] = min(reach[y] for y in kids)
                values[z] = reach[z]
                empty[z] = False
    return Labeling(G.domain, values, empty, "t_hat")


def _committee(G, F, init, tuple_cap, keep_phi, shuffle_seed, kind):
    values = {}
    empty = {}
    passed = {}
    phi = {} if keep_phi else None
    for m, layer in layers(G.domain):
        order = sorted(layer)
        if shuffle_seed is not None:
            random.Random(mix(shuffle_seed, m)).shuffle(order)
        for z in order:
            kids = G.children(z)
            found = set()
            if kids:
                if len(kids) ** F.r > tuple_cap:
                    raise BudgetExceeded(
                        f"{len(kids)}^{F.r} committees at {z} exceed the cap {tuple_cap}"
                    )
                select = F.select
                for reports in itertools.product([(y, passed[y]) for y in kids], repeat=F.r):
                    i = select(z, reports)
                    if i is not None:
                        found.add(reports[i][1])
            if found:
                values[z] = min(found)
                empty[z] = False
                passed[z] = values[z]
            else:
                values[z] = init(z)
                empty[z] = True
                passed[z] = min(z)
            if keep_phi:
                phi[z] = frozenset(found)
    return Labeling(G.domain, values, empty, kind, phi)


def s_hat(G: DownwardGraph, F: PartialSelection, *, tuple_cap=DEFAULT_TUPLE_CAP,
          keep_phi=False, shuffle_seed=None) -> Labeling:
    return _committee(G, F, max, tuple_cap, keep_phi, shuffle_seed, "s_hat")


def h_rho(G: DownwardGraph, F: PartialSelection, rho: MinDominantFamily, *,
          tuple_cap=DEFAULT_TUPLE_CAP, keep_phi=False, shuffle_seed=None) -> Labeling:
    D = G.domain
    init = lambda z: _checked_rho(rho, D, z)
    return _committee(G, F, init, tuple_cap, keep_phi, shuffle_seed, "h_rho")


def _checked_rho(rho, D, z):
    v = rho(D, z)
    if v < min(z):
        raise MinDominanceError(z, v)
    return v


def min_coordinate(D: Domain) -> Labeling:
    """f(x) = min(x); handy as a trivially regular labeling."""
    return Labeling(D, {z: min(z) for z in D.sorted}, {z: True for z in D.sorted}, "min")
