"""Closed-form bijectivity criteria for the normalization map.

Three decision procedures are provided: the criterion for strict systems
(driven by the shape of the diagram around each B2-I root), the criterion
for model varieties stated on a highest weight, and two sufficient
conditions for non-strict systems.  :func:`cross_check` compares each of
them with the orbit pipeline.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

from .lattice import is_distinguished
from .orbits import OrbitTable, all_orbits, check_faithful
from .rootsys import DynkinComponent, RootSystem, support
from .spherical import Divisor, SphericalSystem, is_strict

INF = math.inf
YES, NO, UNKNOWN = "yes", "no", "unknown"
SHAPES = ("B1", "B2", "C1", "C2", "F1", "F2", "F3", "Other")


class CriterionError(ValueError):
    """A precondition of a criterion does not hold."""


@dataclass(frozen=True)
class ShapeClassification:
    sigma: int  # index into Sigma
    component: DynkinComponent
    shape: str
    m_sigma: int | None
    chain: tuple[int, ...]  # simple roots beta_1, beta_2, ... (non-parabolic, from the double link)
    chain_colors: tuple[str, ...]  # D_1 .. D_m
    d_sharp: str
    d_flat: str
    flat_sharp_distinguished: bool
    root_after_chain: bool  # some root is supported on beta_{m+1}
    diagnostics: str = ""

    @property
    def even(self) -> tuple[str, ...]:
        return tuple(c for k, c in enumerate(self.chain_colors, 1) if k % 2 == 0)

    @property
    def odd(self) -> tuple[str, ...]:
        return tuple(c for k, c in enumerate(self.chain_colors, 1) if k % 2 == 1)


@dataclass(frozen=True)
class Witness:
    sigma: int | None
    clause: str
    detail: str = ""


@dataclass(frozen=True)
class Verdict:
    bijective: str
    witnesses: tuple[Witness, ...] = ()
    method: str = ""

    def __post_init__(self) -> None:
        if self.bijective == NO and not self.witnesses:
            raise AssertionError("a negative verdict needs witnesses")


# ---------------------------------------------------------------------------
# shapes


def _single_color(sys: SphericalSystem, a: int) -> str:
    d = sys.delta(a)
    if len(d) != 1:
        raise CriterionError(f"a{a + 1} does not move exactly one color")
    return d[0].id


def shape_classify(sys: SphericalSystem, sigma: int) -> ShapeClassification:
    kind = sys.kinds[sigma]
    if kind is None or kind.name != "B-I" or kind.rank != 2:
        raise CriterionError(f"root {sigma + 1} is not of type B2-I")
    if not is_strict(sys):
        raise CriterionError("system is not strict")
    rs = sys.rs
    long_, short = kind.labeling
    comp = rs.component_of(long_)
    d_sharp = _single_color(sys, long_)
    d_flat = _single_color(sys, short)
    fs = any(is_distinguished(sys, s) is not None for s in ([d_flat], [d_sharp], [d_flat, d_sharp]))
    gamma = set(comp.indices)
    roots_in = [i for i, v in enumerate(sys.sigma) if support(v) <= gamma]

    def restricted(i: int) -> tuple[int, ...]:
        return tuple(sys.sigma[i][a] for a in comp.indices)

    base = dict(sigma=sigma, component=comp, d_sharp=d_sharp, d_flat=d_flat, flat_sharp_distinguished=fs)
    if fs:
        # no shape is needed: the orbit with a doubled root exists iff D_flat is outside Supp
        return ShapeClassification(shape="Other", m_sigma=None, chain=(), chain_colors=(), root_after_chain=False,
                                   diagnostics="{D_flat, D_sharp} contains a distinguished subset", **base)
    if comp.kind == "F4":
        pats = {
            "F1": {(1, 1, 0, 0), (0, 1, 1, 0), (0, 0, 1, 1)},
            "F2": {(1, 0, 0, 1), (0, 1, 1, 0)},
            "F3": {(1, 1, 0, 0), (0, 1, 1, 0), (0, 0, 2, 0)},
        }
        got = {restricted(i) for i in roots_in}
        sp_in = sys.sp & gamma
        for name, pat in pats.items():
            if got == pat and not sp_in:
                return ShapeClassification(shape=name, m_sigma=None, chain=(), chain_colors=(), root_after_chain=False, **base)
        return ShapeClassification(shape="Other", m_sigma=None, chain=(), chain_colors=(), root_after_chain=False,
                                   diagnostics="F4 component matches no listed shape", **base)
    if comp.kind not in ("B", "C"):
        raise AssertionError("B2-I root outside a B, C or F4 component")
    order = comp.double_link_order()
    beta = [a for a in order if a not in sys.sp]
    if beta[0] != order[0] or beta[1] != order[1]:
        raise AssertionError("support of a B2-I root must be the double link")

    def chain_root(k: int) -> int | None:
        """Index of the A-type root spanning beta_{k-1}..beta_k (1-based k)."""
        if k > len(beta):
            return None
        lo, hi = sorted((order.index(beta[k - 2]), order.index(beta[k - 1])))
        nodes = set(order[lo:hi + 1])
        for i in roots_in:
            v = sys.sigma[i]
            if support(v) == nodes and all(v[a] == 1 for a in nodes):
                kk = sys.kinds[i]
                if kk is not None and kk.name == "A-sum":
                    return i
        return None

    others_on_b2 = [i for i in roots_in if i != sigma and sys.sigma[i][beta[1]]]
    b1_doubled = sys.sigma_index(tuple(2 * int(a == beta[0]) for a in range(sys.n))) is not None
    rho3 = chain_root(3)
    shape = "Other"
    diag = ""
    if comp.kind == "B":
        if rho3 is not None:
            shape = "B1" if b1_doubled else "B2"
        else:
            diag = "no A-type root continues the chain past beta_2"
    else:
        a1a1 = [i for i in others_on_b2 if sys.kinds[i] is not None and sys.kinds[i].name == "A1xA1"]
        if a1a1:
            shape = "C2"
        elif rho3 is not None:
            shape = "C1"
        else:
            diag = "no A-type or A1xA1 root on beta_2 besides sigma"
    m = None
    chain_colors: tuple[str, ...] = ()
    after = False
    if shape in ("B1", "B2", "C1"):
        m = 3
        while True:
            nxt = chain_root(m + 1)
            if nxt is None:
                break
            m += 1
        chain_colors = tuple(_single_color(sys, beta[k]) for k in range(m))
        if m < len(beta):
            b_next = beta[m]
            after = any(sys.sigma[i][b_next] for i in range(sys.r))
    return ShapeClassification(shape=shape, m_sigma=m, chain=tuple(beta), chain_colors=chain_colors,
                               root_after_chain=after, diagnostics=diag, **base)


def b2i_roots(sys: SphericalSystem) -> list[int]:
    return [i for i, k in enumerate(sys.kinds) if k is not None and k.name == "B-I" and k.rank == 2]


def _e_o(chain_colors: Sequence[str], supp: frozenset[str]) -> tuple[float, float]:
    e = min((k for k, c in enumerate(chain_colors, 1) if k % 2 == 0 and c in supp), default=INF)
    o = min((k for k, c in enumerate(chain_colors, 1) if k % 2 == 1 and c in supp), default=INF)
    return e, o


def strict_bijectivity(sys: SphericalSystem, delta: Divisor, check: bool = True) -> Verdict:
    if not is_strict(sys):
        raise CriterionError("system is not strict")
    if check and not check_faithful(sys, delta).faithful:
        raise CriterionError("divisor is not faithful")
    supp = delta.support
    wit = []
    for i in b2i_roots(sys):
        sh = shape_classify(sys, i)
        flat = sh.d_flat in supp
        if sh.shape == "B1":
            even_empty = not (set(sh.even) & supp)
            parity = (not sh.root_after_chain) or (sh.m_sigma % 2 == 1)
            if not (flat or (even_empty and parity)):
                why = "even chain color in support" if not even_empty else "m(sigma) even with a root past the chain"
                wit.append(Witness(i, "B1", why))
        elif sh.shape == "B2":
            if not flat:
                wit.append(Witness(i, "B2", "D_flat not in support"))
        elif sh.shape == "C1":
            e, o = _e_o(sh.chain_colors, supp)
            if e == INF:
                wit.append(Witness(i, "C1", "no even chain color in support"))
            elif o != INF and not o >= e - 1:
                wit.append(Witness(i, "C1", f"o = {o} < e - 1 = {e - 1}"))
        else:
            if sh.d_sharp in supp and not flat:
                wit.append(Witness(i, "iv", f"shape {sh.shape}: D_sharp in support without D_flat"))
    return Verdict(NO if wit else YES, tuple(wit), "strict")


def model_bijectivity(rs: RootSystem, weight: Sequence[int]) -> Verdict:
    weight = tuple(int(x) for x in weight)
    if len(weight) != rs.n:
        raise CriterionError("weight length does not match rank")
    if any(x < 0 for x in weight):
        raise CriterionError("weight is not dominant")
    if not any(weight):
        raise CriterionError("weight is zero")
    supp = {i for i, x in enumerate(weight) if x}
    wit = []
    for c in rs.components:
        order = c.double_link_order()
        if c.kind == "B":
            even = {order[k - 1] for k in range(2, c.rank + 1, 2)}
            if not (order[0] in supp or not (supp & even)):
                wit.append(Witness(None, "B", f"component {c.label}"))
        elif c.kind == "C":
            e = min((k for k in range(2, c.rank + 1, 2) if order[k - 1] in supp), default=INF)
            o = min((k for k in range(1, c.rank + 1, 2) if order[k - 1] in supp), default=INF)
            if not o >= e - 1:
                wit.append(Witness(None, "C", f"component {c.label}: o = {o} < e - 1 = {e - 1}"))
        elif c.kind == "F4":
            if order[1] in supp and order[2] not in supp:
                wit.append(Witness(None, "F4", f"component {c.label}"))
    return Verdict(NO if wit else YES, tuple(wit), "model")


def nonstrict_sufficient(sys: SphericalSystem, delta: Divisor) -> Verdict:
    pairs = []
    for a in sorted(sys.s_a):
        dp, dm = sys.delta(a)
        pairs.append((a, delta.n(dp.id), delta.n(dm.id)))
    hits = [Witness(sys.sigma_index(sys.unit(a)), "i", f"n(D+) = n(D-) = {x} at a{a + 1}") for a, x, y in pairs if x == y and x]
    if hits:
        return Verdict(NO, tuple(hits), "nonstrict")
    if sys.rs.simply_laced and all(x != y for _, x, y in pairs):
        return Verdict(YES, (), "nonstrict")
    return Verdict(UNKNOWN, (), "nonstrict")


@dataclass(frozen=True)
class ConsistencyReport:
    pipeline_bijective: bool
    verdict: Verdict
    consistent: bool
    witness_classes: tuple[int, ...]
    table: OrbitTable = field(repr=False, compare=False, default=None)


def cross_check(sys: SphericalSystem, delta: Divisor, table: OrbitTable | None = None) -> ConsistencyReport:
    table = table or all_orbits(sys, delta)
    pipe = table.bijective
    verdict = strict_bijectivity(sys, delta) if is_strict(sys) else nonstrict_sufficient(sys, delta)
    if verdict.bijective == UNKNOWN:
        ok = True
    else:
        ok = (verdict.bijective == YES) == pipe
    return ConsistencyReport(pipe, verdict, ok, tuple(c.class_id for c in table.witnesses()), table)
