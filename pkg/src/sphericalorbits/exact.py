"""Exact rational linear algebra: feasibility, ranks, extreme rays.

Instances in this package are tiny (tens of variables), so everything is
done with :class:`fractions.Fraction` and no tolerance anywhere.
"""
from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Sequence

Matrix = Sequence[Sequence[int | Fraction]]


def rank(rows: Matrix) -> int:
    m = [[Fraction(x) for x in r] for r in rows]
    if not m:
        return 0
    ncols = len(m[0])
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c] / m[r][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        r += 1
        if r == len(m):
            break
    return r


def solve_square(a: Matrix, b: Sequence[int | Fraction]) -> list[Fraction] | None:
    """Solve a square system; ``None`` if singular."""
    n = len(a)
    m = [[Fraction(x) for x in row] + [Fraction(y)] for row, y in zip(a, b)]
    for c in range(n):
        piv = next((i for i in range(c, n) if m[i][c] != 0), None)
        if piv is None:
            return None
        m[c], m[piv] = m[piv], m[c]
        inv = 1 / m[c][c]
        m[c] = [x * inv for x in m[c]]
        for i in range(n):
            if i != c and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[c])]
    return [m[i][n] for i in range(n)]


def independent_rows(rows: Matrix) -> list[int]:
    """Indices of a maximal linearly independent subset, greedily in order."""
    chosen: list[int] = []
    basis: list[list[Fraction]] = []
    for idx, r in enumerate(rows):
        if rank(basis + [list(r)]) > len(basis):
            basis.append([Fraction(x) for x in r])
            chosen.append(idx)
    return chosen


def _phase1(a: list[list[Fraction]], b: list[Fraction]) -> list[Fraction] | None:
    """Find x >= 0 with a x = b (b >= 0) by phase-1 simplex, Bland's rule."""
    m = len(a)
    n = len(a[0]) if m else 0
    if m == 0:
        return [Fraction(0)] * n
    # tableau columns: n originals, m artificials, rhs
    tab = [a[i] + [Fraction(int(i == j)) for j in range(m)] + [b[i]] for i in range(m)]
    basis = [n + i for i in range(m)]
    width = n + m
    # objective: minimise sum of artificials; reduced costs for originals
    cost = [Fraction(0)] * (width + 1)
    for i in range(m):
        for j in range(width + 1):
            if j < n or j == width:
                cost[j] -= tab[i][j]
    while True:
        enter = next((j for j in range(width) if cost[j] < 0), None)
        if enter is None:
            break
        best = None
        leave = None
        for i in range(m):
            if tab[i][enter] > 0:
                ratio = tab[i][width] / tab[i][enter]
                if best is None or ratio < best or (ratio == best and basis[i] < basis[leave]):
                    best, leave = ratio, i
        if leave is None:  # unbounded in phase 1 cannot happen
            raise AssertionError("phase-1 objective unbounded")
        piv = tab[leave][enter]
        tab[leave] = [x / piv for x in tab[leave]]
        for i in range(m):
            if i != leave and tab[i][enter] != 0:
                f = tab[i][enter]
                tab[i] = [x - f * y for x, y in zip(tab[i], tab[leave])]
        f = cost[enter]
        cost = [x - f * y for x, y in zip(cost, tab[leave])]
        basis[leave] = enter
    if cost[width] != 0:
        return None
    x = [Fraction(0)] * width
    for i, j in enumerate(basis):
        x[j] = tab[i][width]
    if any(x[n + i] != 0 for i in range(m)):
        return None
    return x[:n]


def feasible_geq(g: Matrix, h: Sequence[int | Fraction]) -> list[Fraction] | None:
    """Return y >= 0 with g y >= h, or ``None`` if none exists."""
    k = len(g)
    n = len(g[0]) if k else 0
    if k == 0:
        return [Fraction(0)] * n
    a: list[list[Fraction]] = []
    b: list[Fraction] = []
    for r in range(k):
        # g y - s = h  with slack s_r >= 0
        row = [Fraction(x) for x in g[r]] + [Fraction(-int(r == t)) for t in range(k)]
        rhs = Fraction(h[r])
        if rhs < 0:
            row = [-x for x in row]
            rhs = -rhs
        a.append(row)
        b.append(rhs)
    sol = _phase1(a, b)
    return None if sol is None else sol[:n]


def primitive(v: Sequence[int | Fraction]) -> tuple[int, ...]:
    """Scale a nonzero rational vector to the primitive integer vector on its ray."""
    fr = [Fraction(x) for x in v]
    den = 1
    for x in fr:
        den = den * x.denominator // gcd(den, x.denominator)
    ints = [int(x * den) for x in fr]
    g = 0
    for x in ints:
        g = gcd(g, abs(x))
    if g == 0:
        raise ValueError("zero vector has no primitive multiple")
    return tuple(x // g for x in ints)


def extreme_rays(eqs: Matrix, dim: int) -> list[tuple[int, ...]]:
    """Primitive extreme rays of the pointed cone {v >= 0, eqs v = 0} in Q^dim.

    Double description: start from the orthant and cut by one hyperplane at a
    time, keeping only rays that remain extreme.
    """
    rays: list[tuple[int, ...]] = [tuple(int(i == j) for j in range(dim)) for i in range(dim)]
    used: list[list[int | Fraction]] = []
    for row in eqs:
        val = lambda r: sum(Fraction(a) * b for a, b in zip(row, r))  # noqa: E731
        zero = [r for r in rays if val(r) == 0]
        pos = [r for r in rays if val(r) > 0]
        neg = [r for r in rays if val(r) < 0]
        used.append(list(row))
        new = set(zero)
        for p in pos:
            vp = val(p)
            for q in neg:
                vq = val(q)
                comb = [vp * y - vq * x for x, y in zip(p, q)]
                cand = primitive(comb)
                if _is_extreme(cand, used, dim):
                    new.add(cand)
        rays = sorted(new)
    return sorted(r for r in rays if _is_extreme(r, used, dim))


def _is_extreme(r: Sequence[int], eqs: list[list[int | Fraction]], dim: int) -> bool:
    active = [list(e) for e in eqs]
    active += [[int(i == j) for j in range(dim)] for i in range(dim) if r[i] == 0]
    return rank(active) == dim - 1
