"""Points of N^k, order types, cubes E^k and the cap structure.

Points are plain tuples of nonnegative ints. A :class:`Domain` is an immutable
finite set of points sharing one arity.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from math import comb

Point = tuple[int, ...]

MAX_COORD = (1 << 63) - 1
ORDER_TYPE_K_CAP = 4


class DomainError(ValueError):
    pass


class CubeNotContained(DomainError):
    pass


def _check_point(x, k=None) -> Point:
    x = tuple(x)
    if not x:
        raise DomainError("points must have arity >= 1")
    if k is not None and len(x) != k:
        raise DomainError(f"point {x} has arity {len(x)}, expected {k}")
    for c in x:
        if isinstance(c, bool) or not isinstance(c, int):
            raise DomainError(f"non-integer coordinate in {x}")
        if c < 0 or c > MAX_COORD:
            raise DomainError(f"coordinate out of range in {x}")
    return x


def rank_vector(x) -> tuple[int, ...]:
    """Rank of each coordinate among the distinct coordinates of ``x``.

    >>> rank_vector((3, 8, 5, 3, 8))
    (0, 2, 1, 0, 2)
    """
    if len(x) == 0:
        raise ValueError("rank_vector of an empty tuple")
    ranks = {v: i for i, v in enumerate(sorted(set(x)))}
    return tuple(ranks[v] for v in x)


def order_equivalent(x, y) -> bool:
    if len(x) != len(y):
        raise ValueError(f"arity mismatch: {len(x)} vs {len(y)}")
    return rank_vector(x) == rank_vector(y)


def enumerate_order_types(k: int, cap: int = ORDER_TYPE_K_CAP) -> frozenset[tuple[int, ...]]:
    """All canonical rank vectors of arity ``k``.

    Every order type has a representative with coordinates below ``k``, so it
    suffices to canonicalize {0..k-1}^k.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    if k > cap:
        raise ValueError(f"k={k} exceeds the enumeration cap {cap}")
    return frozenset(rank_vector(t) for t in itertools.product(range(k), repeat=k))


def surjection_count(k: int, j: int) -> int:
    """Number of surjections from a k-set onto a j-set (inclusion-exclusion)."""
    if k < 1 or j < 1:
        raise ValueError("k and j must be positive")
    if j > k:
        return 0
    return sum((-1) ** i * comb(j, i) * (j - i) ** k for i in range(j + 1))


class Domain:
    """Finite set of points of common arity ``k``."""

    def __init__(self, points, k: int | None = None):
        pts = [tuple(p) for p in points]
        if k is None:
            if not pts:
                raise DomainError("cannot infer arity of an empty domain; pass k")
            k = len(pts[0])
        if k < 1:
            raise DomainError("arity must be >= 1")
        self.points = frozenset(_check_point(p, k) for p in pts)
        self.k = k

    def __iter__(self):
        return iter(self.sorted)

    def __len__(self):
        return len(self.points)

    def __contains__(self, x):
        return tuple(x) in self.points

    def __eq__(self, other):
        if not isinstance(other, Domain):
            return NotImplemented
        return self.k == other.k and self.points == other.points

    def __hash__(self):
        return hash((self.k, self.points))

    def __repr__(self):
        return f"Domain(k={self.k}, n={len(self)})"

    @cached_property
    def sorted(self) -> tuple[Point, ...]:
        return tuple(sorted(self.points))

    @cached_property
    def index(self) -> dict[Point, int]:
        return {p: i for i, p in enumerate(self.sorted)}

    @cached_property
    def field(self) -> frozenset[int]:
        return frozenset(c for p in self.points for c in p)

    def below(self, x) -> frozenset[Point]:
        """``D_x``: points whose max is strictly below max(x)."""
        m = max(x)
        return frozenset(z for z in self.points if max(z) < m)

    def union(self, other) -> Domain:
        return Domain(self.points | frozenset(map(tuple, other)), self.k)

    def to_json(self) -> dict:
        return {"k": self.k, "points": [list(p) for p in self.sorted]}

    @classmethod
    def from_json(cls, doc) -> Domain:
        return cls(doc["points"], doc["k"])


@dataclass(frozen=True)
class Cube:
    """The Cartesian power E^k of a finite base set E."""

    base: tuple[int, ...]
    k: int

    def __post_init__(self):
        base = tuple(sorted(self.base))
        if len(set(base)) != len(base):
            raise DomainError(f"cube base has repeated values: {self.base}")
        if not base:
            raise DomainError("cube base must be nonempty")
        _check_point(base)
        if self.k < 1:
            raise DomainError("arity must be >= 1")
        object.__setattr__(self, "base", base)

    @property
    def p(self) -> int:
        return len(self.base)

    @property
    def e0(self) -> int:
        return self.base[0]

    @property
    def top(self) -> int:
        return self.base[-1]

    @cached_property
    def points(self) -> frozenset[Point]:
        return frozenset(itertools.product(self.base, repeat=self.k))

    def as_domain(self) -> Domain:
        return Domain(self.points, self.k)

    def to_json(self) -> dict:
        return {"E": list(self.base), "k": self.k}

    @classmethod
    def from_json(cls, doc) -> Cube:
        return cls(tuple(doc["E"]), doc["k"])


def _points(D):
    return D.points if isinstance(D, (Domain, Cube)) else frozenset(map(tuple, D))


def set_max(D) -> tuple[int, frozenset[Point]]:
    pts = _points(D)
    if not pts:
        raise DomainError("set_max of an empty domain")
    m = max(max(z) for z in pts)
    return m, frozenset(z for z in pts if max(z) == m)


def require_cube_in(D: Domain, E: Cube) -> None:
    if E.k != D.k:
        raise CubeNotContained(f"cube arity {E.k} differs from domain arity {D.k}")
    missing = E.points - D.points
    if missing:
        raise CubeNotContained(f"E^k not contained in D; missing e.g. {min(missing)}")


def is_capped_by(D: Domain, E: Cube) -> bool:
    require_cube_in(D, E)
    return set_max(D)[1] == set_max(E.points)[1]


def cap_restrict(D: Domain, E: Cube) -> Domain:
    """Points of D below max(E), plus setmax(E^k)."""
    require_cube_in(D, E)
    keep = {z for z in D.points if max(z) < E.top}
    keep |= set_max(E.points)[1]
    return Domain(keep, D.k)


def cap_cube(D: Domain) -> Cube | None:
    """The cube E^k capping D, if any.

    A capping cube is determined by the top layer of D: its coordinates are
    exactly E.
    """
    if len(D) == 0:
        return None
    _, top = set_max(D)
    base = sorted({c for z in top for c in z})
    if len(base) < 2:
        return None
    E = Cube(tuple(base), D.k)
    if not E.points <= D.points:
        return None
    return E if set_max(E.points)[1] == top else None
