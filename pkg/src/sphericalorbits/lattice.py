"""Distinguished subsets of colors and quotient spherical systems."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations, product
from typing import Iterable, Sequence

from .exact import extreme_rays, feasible_geq, independent_rows, rank, solve_square
from .spherical import (
    KIND_2A,
    KIND_A,
    KIND_B,
    Color,
    RootVec,
    SphericalSystem,
    SphericalSystemError,
)

DEFAULT_ENUM_GUARD = 24


class FreenessViolation(SphericalSystemError):
    """The kernel monoid of a distinguished subset is not free."""


class EnumerationGuardError(ValueError):
    """An exhaustive enumeration would exceed its size guard."""


@dataclass(frozen=True)
class DistinguishedSubset:
    subset: frozenset[str]
    witness: tuple[tuple[str, Fraction], ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "subset", frozenset(self.subset))

    def weight(self, cid: str) -> Fraction:
        return dict(self.witness)[cid]

    def sorted_ids(self) -> list[str]:
        return sorted(self.subset)


def _rows(sys: SphericalSystem, ids: Iterable[str]) -> tuple[tuple[int, ...], ...]:
    return tuple(sys.color(c).pairing for c in ids)


@lru_cache(maxsize=262144)
def _witness(rows: tuple[tuple[int, ...], ...], r: int) -> tuple[Fraction, ...] | None:
    if not rows:
        return ()
    # x = y + 1 with y >= 0; constraint sum_D x_D c(D, s) >= 0 per root s
    g = [[rows[d][s] for d in range(len(rows))] for s in range(r)]
    h = [-sum(rows[d][s] for d in range(len(rows))) for s in range(r)]
    y = feasible_geq(g, h)
    if y is None:
        return None
    return tuple(v + 1 for v in y)


def is_distinguished(sys: SphericalSystem, ids: Iterable[str]) -> DistinguishedSubset | None:
    ids = sorted(set(ids))
    w = _witness(_rows(sys, ids), sys.r)
    if w is None:
        return None
    return DistinguishedSubset(frozenset(ids), tuple(zip(ids, w)))


def check_witness(sys: SphericalSystem, d: DistinguishedSubset) -> bool:
    if set(dict(d.witness)) != set(d.subset):
        return False
    if any(x <= 0 for _, x in d.witness):
        return False
    for s in range(sys.r):
        if sum(x * sys.color(c).pairing[s] for c, x in d.witness) < 0:
            return False
    return True


def enumerate_distinguished(sys: SphericalSystem, guard: int = DEFAULT_ENUM_GUARD) -> list[DistinguishedSubset]:
    """All distinguished subsets, by exhaustive search over 2^Delta."""
    ids = sorted(c.id for c in sys.colors)
    if len(ids) > guard:
        raise EnumerationGuardError(f"{len(ids)} colors exceed the enumeration guard {guard}")
    out = []
    for k in range(len(ids) + 1):
        for sub in combinations(ids, k):
            d = is_distinguished(sys, sub)
            if d is not None:
                out.append(d)
    found = {d.subset for d in out}
    for a in found:
        for b in found:
            if a | b not in found:
                raise AssertionError("distinguished subsets are not closed under union")
    return out


def max_distinguished_avoiding(sys: SphericalSystem, avoid: Iterable[str]) -> DistinguishedSubset:
    """Union of all distinguished subsets disjoint from ``avoid``.

    A color lies in such a union iff some nonnegative combination of allowed
    colors, positive on it, pairs nonnegatively with every root; one LP per
    allowed color decides this.
    """
    avoid = set(avoid)
    allowed = tuple(sorted(c.id for c in sys.colors if c.id not in avoid))
    return _max_avoiding(sys, allowed)


@lru_cache(maxsize=65536)
def _max_avoiding(sys: SphericalSystem, allowed: tuple[str, ...]) -> DistinguishedSubset:
    rows = _rows(sys, allowed)
    r = sys.r
    total = {c: Fraction(0) for c in allowed}
    members = []
    for i, cid in enumerate(allowed):
        if total[cid] > 0:
            members.append(cid)
            continue
        g = [[rows[d][s] for d in range(len(rows))] for s in range(r)]
        g.append([int(d == i) for d in range(len(rows))])
        h = [0] * r + [1]
        y = feasible_geq(g, h)
        if y is None:
            continue
        members.append(cid)
        for d, v in enumerate(y):
            total[allowed[d]] += v
    members = sorted(set(members))
    witness = tuple((c, total[c]) for c in members)
    return DistinguishedSubset(frozenset(members), witness)


# ---------------------------------------------------------------------------
# kernel monoid


def kernel_monoid_generators(sys: SphericalSystem, dsub: DistinguishedSubset | Iterable[str]) -> list[RootVec]:
    """Free generators of {v in N^Sigma : c(D, v) = 0 for D in the subset}.

    Output vectors are in coordinates over Sigma, sorted in decreasing
    lexicographic order.
    """
    ids = dsub.subset if isinstance(dsub, DistinguishedSubset) else frozenset(dsub)
    rows = tuple(sorted(set(_rows(sys, sorted(ids)))))
    return list(_kernel_generators(rows, sys.r))


@lru_cache(maxsize=65536)
def _kernel_generators(rows: tuple[tuple[int, ...], ...], r: int) -> tuple[RootVec, ...]:
    if r == 0:
        return ()
    rays = extreme_rays(rows, r) if rows else [tuple(int(i == j) for j in range(r)) for i in range(r)]
    rays = sorted(rays, reverse=True)
    if rays and rank(rays) < len(rays):
        raise FreenessViolation(f"kernel cone is not simplicial: {len(rays)} extreme rays in dimension {rank(rays)}")
    _box_check(rays, r)
    return tuple(rays)


def _box_check(rays: Sequence[RootVec], r: int) -> None:
    """Every kernel lattice point in a box is an N-combination of ``rays``.

    Points are parametrised by a set of pivot coordinates on which the ray
    matrix is invertible; box bound is twice the largest generator height.
    """
    if not rays:
        return
    d = len(rays)
    cols = [[ray[i] for ray in rays] for i in range(r)]  # r x d matrix R
    piv = independent_rows(cols)
    rp = [cols[i] for i in piv]
    det_inv = [solve_square(rp, [int(j == k) for j in range(d)]) for k in range(d)]
    if det_inv[0] is None:
        raise AssertionError("pivot submatrix is singular")
    # inverse columns -> matrix inv with inv[j][k]
    inv = [[det_inv[k][j] for k in range(d)] for j in range(d)]
    if all(x.denominator == 1 for row in inv for x in row):
        return  # unimodular: every integer point on the pivots has integral t
    bound = 2 * max(sum(g) for g in rays)
    for vp in product(range(bound + 1), repeat=d):
        t = [sum(inv[j][k] * vp[k] for k in range(d)) for j in range(d)]
        if any(x < 0 for x in t):
            continue
        v = [sum(cols[i][j] * t[j] for j in range(d)) for i in range(r)]
        if any(Fraction(x).denominator != 1 for x in v) or max(v) > bound:
            continue
        if any(x.denominator != 1 for x in t):
            raise FreenessViolation(f"lattice point {tuple(int(x) for x in v)} is not an N-combination of the generators")


# ---------------------------------------------------------------------------
# quotient


@dataclass(frozen=True)
class QuotientSystem:
    base: SphericalSystem
    dsub: DistinguishedSubset
    result: SphericalSystem
    new_sigma_in_old: tuple[RootVec, ...]


def quotient_system(sys: SphericalSystem, dsub: DistinguishedSubset | Iterable[str]) -> QuotientSystem:
    if not isinstance(dsub, DistinguishedSubset):
        d = is_distinguished(sys, dsub)
        if d is None:
            raise SphericalSystemError(f"{sorted(dsub)} is not distinguished")
        dsub = d
    return _quotient(sys, dsub)


@lru_cache(maxsize=65536)
def _quotient(sys: SphericalSystem, dsub: DistinguishedSubset) -> QuotientSystem:
    gens = kernel_monoid_generators(sys, dsub)
    for g in gens:
        for cid in dsub.subset:
            if sys.pairing(cid, g) != 0:
                raise AssertionError("kernel generator pairs nonzero with a quotiented color")
    new_sigma = tuple(
        tuple(sum(g[j] * sys.sigma[j][i] for j in range(sys.r)) for i in range(sys.n)) for g in gens
    )
    sp = set(sys.sp)
    for a in range(sys.n):
        d = sys.delta(a)
        if d and all(c.id in dsub.subset for c in d):
            sp.add(a)
    nset = set(new_sigma)
    unit = sys.unit
    colors = []
    for c in sys.colors:
        if c.id in dsub.subset:
            continue
        row = tuple(sys.pairing(c.id, g) for g in gens)
        if any(unit(a) in nset for a in c.moved_by):
            kind = KIND_A
        elif len(c.moved_by) == 1 and tuple(2 * x for x in unit(c.moved_by[0])) in nset:
            kind = KIND_2A
        else:
            kind = KIND_B
        colors.append(Color(c.id, kind, c.moved_by, row))
    result = SphericalSystem(sys.rs, new_sigma, frozenset(sp), tuple(colors))
    return QuotientSystem(sys, dsub, result, tuple(gens))
