"""Instance sets built from a labeling over a cube, and two zero-sum solvers.

The question asked of an instance is whether some nonempty sub-multiset sums
to exactly 0.

:func:`solve_structured` exploits the shape of instances coming from a
regressively regular labeling: few small negative terms whose total magnitude
is below ``e0 * k**k``, so positive terms at or above that bound can never take
part in a solution, and only a logarithmic number of small positive terms
remain. :func:`solve_oracle` is a plain meet-in-the-middle decision procedure
with no such assumptions.
"""
from __future__ import annotations

import bisect
import random
from dataclasses import dataclass

from ._mix import mix
from .labelers import BudgetExceeded, Labeling, MinDominantFamily
from .lattice import Cube, Domain, Point, cap_cube, is_capped_by
from .regularity import partition_blocks

ORACLE_CAP = 30


class NotCapped(ValueError):
    pass


class PreconditionError(ValueError):
    pass


def log_budget(p: int, k: int, t: int) -> int:
    """Largest m with 2**m <= p**(k*t), i.e. floor(t * log2(p**k))."""
    return (p ** (k * t)).bit_length() - 1


def small_differences(rho, D: Domain, E: Cube) -> set[int]:
    """Distinct values rho(x) - min(x) strictly inside (0, e0 * k**k) over E^k."""
    window = E.e0 * E.k ** E.k
    out = set()
    for x in E.points:
        d = rho(D, x) - min(x)
        if 0 < d < window:
            out.add(d)
    return out


def is_t_log_bounded(rho, D: Domain, E: Cube, t: int) -> bool:
    if t < 1:
        raise ValueError("t must be >= 1")
    if not is_capped_by(D, E):
        raise NotCapped(f"domain is not capped by {E}")
    # |S| <= t*log2(p^k)  <=>  2^|S| <= p^(k t)
    return 2 ** len(small_differences(rho, D, E)) <= E.p ** (E.k * t)


class TLogRho(MinDominantFamily):
    """Min-dominant family designed to be t-log bounded on capped domains.

    On a domain capped by E^k, at most floor(t*log2(p^k)) points of E^k
    (drawn from ``support`` when given) get distinct small differences in
    (0, e0*k^k); every other point of E^k gets a distinct difference of at
    least e0*k^k. Points off the cube, and domains with no cap, get min(x).
    """

    name = "tlog-designed"

    def __init__(self, t: int, seed: int, support=None):
        if t < 1:
            raise ValueError("t must be >= 1")
        self.t = t
        self.seed = seed
        self.support = None if support is None else frozenset(map(tuple, support))
        self._cache = {}

    def design(self, D: Domain) -> dict[Point, int]:
        key = (D.k, D.points)
        if key in self._cache:
            return self._cache[key]
        E = cap_cube(D)
        table = {}
        if E is not None:
            rng = random.Random(mix(self.seed, E.base))
            pts = sorted(E.points)
            eligible = pts if self.support is None else [x for x in pts if x in self.support]
            window = E.e0 * E.k ** E.k
            m = min(log_budget(E.p, E.k, self.t), len(eligible), max(window - 1, 0))
            chosen = rng.sample(eligible, m)
            small = rng.sample(range(1, window), m) if m else []
            large = rng.sample(range(window, window + 4 * len(pts) + 4), len(pts) - m)
            for x, d in zip(chosen, small):
                table[x] = min(x) + d
            rest = [x for x in pts if x not in table]
            for x, d in zip(rest, large):
                table[x] = min(x) + d
        self._cache[key] = table
        return table

    def __call__(self, D, x):
        return self.design(D).get(tuple(x), min(x))

    def params(self):
        p = {"t": self.t}
        if self.support is not None:
            p["support"] = [list(x) for x in sorted(self.support)]
        return p


def design_t_log_rho(D: Domain, E: Cube, t: int, seed: int, support=None) -> TLogRho:
    if not is_capped_by(D, E):
        raise NotCapped(f"domain is not capped by {E}")
    rho = TLogRho(t, seed, support)
    assert is_t_log_bounded(rho, D, E, t)
    return rho


# -- integer rules for the middle block ------------------------------------------

class IRule:
    name = "i-rule"
    seed = None

    def __call__(self, D, x) -> int:
        raise NotImplementedError

    def params(self):
        return {}

    def descriptor(self):
        d = {"name": self.name, "params": self.params()}
        if self.seed is not None:
            d["seed"] = self.seed
        return d


class ZeroI(IRule):
    name = "zero"

    def __call__(self, D, x):
        return 0


class TableI(IRule):
    name = "table"

    def __init__(self, table, default=0):
        self.table = {tuple(p): int(v) for p, v in dict(table).items()}
        self.default = default

    def __call__(self, D, x):
        return self.table.get(tuple(x), self.default)

    def params(self):
        return {"table": [[list(p), v] for p, v in sorted(self.table.items())],
                "default": self.default}


class SeededRangeI(IRule):
    name = "seeded-hash-range"

    def __init__(self, lo, hi, seed):
        if hi < lo:
            raise ValueError("empty range")
        self.lo, self.hi, self.seed = lo, hi, seed

    def __call__(self, D, x):
        return self.lo + mix(self.seed, 0x1D, x) % (self.hi - self.lo + 1)

    def params(self):
        return {"lo": self.lo, "hi": self.hi}


# -- instances -------------------------------------------------------------------------

@dataclass(frozen=True)
class InstanceSet:
    """The three blocks of values, each a set (distinct values, sorted).

    ``provenance`` keeps one ``(point, block, value)`` row per cube point, so
    values shared by several points stay traceable.
    """

    delta0: tuple
    delta1: tuple
    delta2: tuple
    provenance: tuple = ()
    e0: int = 0
    k: int = 2
    p: int = 2

    def elements(self) -> list[int]:
        return list(self.delta0) + list(self.delta1) + list(self.delta2)

    def __len__(self):
        return len(self.delta0) + len(self.delta1) + len(self.delta2)

    @classmethod
    def of(cls, delta0=(), delta1=(), delta2=(), **kw) -> InstanceSet:
        norm = lambda xs: tuple(sorted(set(int(v) for v in xs)))
        return cls(norm(delta0), norm(delta1), norm(delta2), **kw)

    def to_json(self) -> dict:
        return {
            "delta0": list(self.delta0),
            "delta1": list(self.delta1),
            "delta2": list(self.delta2),
            "provenance": [[list(x), b, v] for x, b, v in self.provenance],
            "e0": self.e0,
            "k": self.k,
            "p": self.p,
        }

    @classmethod
    def from_json(cls, doc) -> InstanceSet:
        prov = tuple((tuple(x), b, v) for x, b, v in doc.get("provenance", []))
        return cls.of(doc["delta0"], doc["delta1"], doc["delta2"], provenance=prov,
                      e0=doc.get("e0", 0), k=doc.get("k", 2), p=doc.get("p", 2))


def build_instances(h: Labeling, rho: MinDominantFamily, i_rule, E: Cube) -> InstanceSet:
    D = h.domain
    blocks = partition_blocks(h, E)
    prov = []
    for x in blocks.E0:
        prov.append((x, 0, h[x] - E.e0))
    for x in blocks.E1:
        prov.append((x, 1, int(i_rule(D, x))))
    for x in blocks.E2:
        d = rho(D, x) - min(x)
        if d < 0:
            raise ValueError(f"rho is not min-dominant at {x}")
        prov.append((x, 2, d))
    prov.sort()
    by_block = [[v for _, b, v in prov if b == i] for i in range(3)]
    return InstanceSet.of(*by_block, provenance=tuple(prov), e0=E.e0, k=E.k, p=E.p)


@dataclass(frozen=True)
class SolveResult:
    solvable: bool
    certificate: tuple | None
    comparisons: int

    def __post_init__(self):
        if self.solvable and (not self.certificate or sum(self.certificate) != 0):
            raise AssertionError(f"bad certificate {self.certificate}")

    def to_json(self) -> dict:
        return {
            "solvable": self.solvable,
            "certificate": None if self.certificate is None else list(self.certificate),
            "comparisons": self.comparisons,
        }


def _subset_sums(values):
    """[(sum, mask)] for every nonempty mask, masks increasing."""
    sums = [0] * (1 << len(values))
    for i, v in enumerate(values):
        step = 1 << i
        for m in range(step):
            sums[m | step] = sums[m] + v
    return [(sums[m], m) for m in range(1, len(sums))]


def _pick(values, mask):
    return [v for i, v in enumerate(values) if mask >> i & 1]


def structured_diagnosis(H: InstanceSet, k: int, t: int, p: int) -> list[str]:
    """Reasons the structured solver would refuse ``H`` (empty when it applies)."""
    problems = []
    window = H.e0 * k ** k
    if H.delta1:
        problems.append(f"middle block is nonempty ({len(H.delta1)} values)")
    if any(v >= 0 for v in H.delta0):
        problems.append("negative block contains a nonnegative value")
    if any(v < 0 for v in H.delta2):
        problems.append("positive block contains a negative value")
    if len(H.delta0) >= k ** k:
        problems.append(f"{len(H.delta0)} negative values, need fewer than {k ** k}")
    if H.delta0 and sum(-v for v in H.delta0) >= window:
        problems.append(f"negative magnitudes sum to {sum(-v for v in H.delta0)} >= {window}")
    small = [v for v in H.delta2 if 0 < v < window]
    if 2 ** len(small) > p ** (k * t):
        problems.append(f"{len(small)} small positive values exceed t*k*log2(p)")
    return problems


def solve_structured(H: InstanceSet, k: int, t: int, p: int, *, exhaustive=False) -> SolveResult:
    """Pairwise comparison of negative subsets with small positive subsets.

    Stops at the first zero sum unless ``exhaustive``; either way the
    certificate is the first hit in (negative mask, positive mask) order.
    """
    problems = structured_diagnosis(H, k, t, p)
    if problems:
        raise PreconditionError("; ".join(problems))
    if 0 in H.delta2:
        return SolveResult(True, (0,), 0)
    window = H.e0 * k ** k
    neg = list(H.delta0)
    pos = [v for v in H.delta2 if 0 < v < window]
    pos_sums = _subset_sums(pos)
    comparisons = 0
    hit = None
    for s_neg, m_neg in _subset_sums(neg):
        for s_pos, m_pos in pos_sums:
            comparisons += 1
            if hit is None and s_neg + s_pos == 0:
                hit = (m_neg, m_pos)
                if not exhaustive:
                    break
        if hit is not None and not exhaustive:
            break
    if hit is None:
        return SolveResult(False, None, comparisons)
    cert = tuple(sorted(_pick(neg, hit[0]) + _pick(pos, hit[1])))
    return SolveResult(True, cert, comparisons)


def solve_oracle(H, cap: int = ORACLE_CAP) -> SolveResult:
    """Meet in the middle over sorted half-sums. Accepts an InstanceSet or ints."""
    values = H.elements() if isinstance(H, InstanceSet) else [int(v) for v in H]
    if len(values) > cap:
        raise BudgetExceeded(f"{len(values)} elements exceed the oracle cap {cap}")
    half = len(values) // 2
    left, right = values[:half], values[half:]
    right_sums = sorted(_subset_sums(right))
    keys = [s for s, _ in right_sums]
    comparisons = 0
    # left side empty: a nonempty right subset must sum to 0 on its own
    candidates = [(0, 0)] + _subset_sums(left)
    for s_left, m_left in candidates:
        if m_left and s_left == 0:
            cert = _pick(left, m_left)
            return SolveResult(True, tuple(sorted(cert)), comparisons)
        comparisons += 1
        i = bisect.bisect_left(keys, -s_left)
        if i < len(keys) and keys[i] == -s_left:
            cert = _pick(left, m_left) + _pick(right, right_sums[i][1])
            return SolveResult(True, tuple(sorted(cert)), comparisons)
    return SolveResult(False, None, comparisons)
