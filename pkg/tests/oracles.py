"""Independent reference implementations used as test oracles.

None of these share code with the package beyond reading pairings off a
system: distinguishedness is decided by Fourier-Motzkin elimination rather
than simplex, kernel monoids by enumerating lattice points in a box, and
root counts by closing the simple roots under reflections.
"""
from __future__ import annotations

from fractions import Fraction
from itertools import product
from math import gcd


def _normalize(coeffs, rhs):
    """Scale an inequality coeffs.x >= rhs to a canonical integer form."""
    vals = [Fraction(c) for c in coeffs] + [Fraction(rhs)]
    den = 1
    for v in vals:
        den = den * v.denominator // gcd(den, v.denominator)
    ints = [int(v * den) for v in vals]
    g = 0
    for x in ints:
        g = gcd(g, abs(x))
    if g > 1:
        ints = [x // g for x in ints]
    return tuple(ints[:-1]), ints[-1]


def fm_feasible(rows: list[tuple[int, ...]]) -> bool:
    """Is there x with every x_D >= 1 and sum_D x_D rows[D] >= 0 componentwise?"""
    k = len(rows)
    if k == 0:
        return True
    r = len(rows[0])
    cons = set()
    for s in range(r):
        cons.add(_normalize([rows[d][s] for d in range(k)], 0))
    for d in range(k):
        cons.add(_normalize([int(e == d) for e in range(k)], 1))
    for var in range(k):
        pos, neg, rest = [], [], []
        for c, b in cons:
            (pos if c[var] > 0 else neg if c[var] < 0 else rest).append((c, b))
        new = set(rest)
        for cp, bp in pos:
            for cn, bn in neg:
                lp, ln = -cn[var], cp[var]
                comb = [lp * x + ln * y for x, y in zip(cp, cn)]
                new.add(_normalize(comb, lp * bp + ln * bn))
        cons = new
    # only constant constraints 0 >= b remain
    return all(b <= 0 for _, b in cons)


def distinguished_subsets(sys) -> set[frozenset[str]]:
    ids = sorted(c.id for c in sys.colors)
    out = set()
    for mask in range(1 << len(ids)):
        sub = [ids[i] for i in range(len(ids)) if mask >> i & 1]
        if fm_feasible([sys.color(c).pairing for c in sub]):
            out.add(frozenset(sub))
    return out


def kernel_points(rows, r: int, bound: int) -> list[tuple[int, ...]]:
    """Nonzero v in {0..bound}^r with rows . v = 0."""
    return [
        v for v in product(range(bound + 1), repeat=r)
        if any(v) and all(sum(a * b for a, b in zip(row, v)) == 0 for row in rows)
    ]


def irreducibles(points: list[tuple[int, ...]]) -> set[tuple[int, ...]]:
    """Elements of a box-truncated monoid that are not sums of two nonzero elements."""
    pts = set(points)
    out = set()
    for v in points:
        if not any(tuple(a - b for a, b in zip(v, u)) in pts for u in pts if u != v):
            out.add(v)
    return out


def n_combination(v, gens) -> list[tuple[int, ...]]:
    """All ways of writing v as an N-combination of gens (bounded brute force)."""
    out = []
    top = max(v) if v else 0

    def rec(i, rem, coeffs):
        if i == len(gens):
            if not any(rem):
                out.append(tuple(coeffs))
            return
        g = gens[i]
        for c in range(top + 1):
            nxt = tuple(a - c * b for a, b in zip(rem, g))
            if any(x < 0 for x in nxt):
                break
            rec(i + 1, nxt, coeffs + [c])

    rec(0, tuple(v), [])
    return out


def positive_roots(matrix) -> set[tuple[int, ...]]:
    """Closure of the simple roots under simple reflections, in simple-root coordinates.

    ``matrix[i][j] = <alpha_i^vee, alpha_j>``; s_i(v) = v - <alpha_i^vee, v> alpha_i.
    """
    n = len(matrix)
    simple = [tuple(int(i == j) for j in range(n)) for i in range(n)]
    seen = set(simple)
    frontier = list(simple)
    while frontier:
        nxt = []
        for v in frontier:
            for i in range(n):
                p = sum(matrix[i][j] * v[j] for j in range(n))
                w = tuple(v[j] - (p if j == i else 0) for j in range(n))
                if all(x >= 0 for x in w) and any(w) and w not in seen:
                    seen.add(w)
                    nxt.append(w)
        frontier = nxt
    return seen


POSITIVE_ROOT_COUNT = {
    "A": lambda n: n * (n + 1) // 2,
    "B": lambda n: n * n,
    "C": lambda n: n * n,
    "D": lambda n: n * (n - 1),
    "E6": lambda n: 36,
    "E7": lambda n: 63,
    "E8": lambda n: 120,
    "F4": lambda n: 24,
    "G2": lambda n: 6,
}

# Bourbaki numbering, a[i][j] = <alpha_i^vee, alpha_j>
BOURBAKI = {
    "B3": ((2, -1, 0), (-1, 2, -1), (0, -2, 2)),
    "C3": ((2, -1, 0), (-1, 2, -2), (0, -1, 2)),
    "G2": ((2, -3), (-1, 2)),
    "F4": ((2, -1, 0, 0), (-1, 2, -1, 0), (0, -2, 2, -1), (0, 0, -1, 2)),
    "D4": ((2, -1, 0, 0), (-1, 2, -1, -1), (0, -1, 2, 0), (0, -1, 0, 2)),
}
