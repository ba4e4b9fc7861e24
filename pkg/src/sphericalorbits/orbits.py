"""Orbits of a projective orbit closure and of its normalization.

For an orbit W of the wonderful variety (a subset of Sigma) the image orbit
Z' in the normalization is obtained by localizing at W, pulling back the
divisor, and quotienting by the maximal distinguished subset avoiding its
support.  Doubling the appropriate loose roots of Z' gives the orbit Z.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Sequence

from .lattice import (
    DistinguishedSubset,
    EnumerationGuardError,
    max_distinguished_avoiding,
    quotient_system,
)
from .spherical import (
    Divisor,
    RootVec,
    SphericalSystem,
    is_strict,
    localize,
    loose_roots,
)

DEFAULT_ORBIT_GUARD = 20


class HypothesisError(AssertionError):
    """A precondition that upstream code is supposed to guarantee failed."""


@dataclass(frozen=True)
class FaithfulnessReport:
    fd1: bool
    fd1_witness: tuple[str, ...]  # a nonempty distinguished subset avoiding Supp, if any
    fd2: bool
    fd2_failures: tuple[int, ...]  # Sigma indices of loose simple roots with equal multiplicities
    spherically_closed: bool
    closedness_failures: tuple[int, ...]

    @property
    def faithful(self) -> bool:
        return self.fd1 and self.fd2

    def describe(self) -> str:
        parts = []
        if not self.fd1:
            parts.append(f"FD1 fails: {{{', '.join(self.fd1_witness)}}} is distinguished and avoids Supp")
        if not self.fd2:
            parts.append("FD2 fails at roots " + ", ".join(str(i + 1) for i in self.fd2_failures))
        if not self.spherically_closed:
            parts.append("not spherically closed: loose non-simple roots " + ", ".join(str(i + 1) for i in self.closedness_failures))
        return "; ".join(parts) if parts else "faithful"


def check_faithful(sys: SphericalSystem, delta: Divisor) -> FaithfulnessReport:
    delta.check(sys)
    m = max_distinguished_avoiding(sys, delta.support)
    lr = loose_roots(sys)
    fd2_fail = []
    for i in sorted(lr.s):
        a = sys.sigma[i].index(1)
        dp, dm = sys.delta(a)
        if delta.n(dp.id) == delta.n(dm.id):
            fd2_fail.append(i)
    return FaithfulnessReport(
        fd1=not m.subset,
        fd1_witness=tuple(sorted(m.subset)),
        fd2=not fd2_fail,
        fd2_failures=tuple(fd2_fail),
        spherically_closed=not lr.d,
        closedness_failures=tuple(sorted(lr.d)),
    )


def stabilizer_doubling(sys: SphericalSystem, delta: Divisor, check: bool = True) -> frozenset[int]:
    """Indices of roots of ``sys`` to be doubled for the given divisor."""
    if check:
        m = max_distinguished_avoiding(sys, delta.support)
        if m.subset:
            raise HypothesisError(f"distinguished subset {sorted(m.subset)} avoids the divisor support")
    lr = loose_roots(sys)
    out = set(lr.d)
    for i in lr.s:
        a = sys.sigma[i].index(1)
        dp, dm = sys.delta(a)
        if delta.n(dp.id) == delta.n(dm.id):
            out.add(i)
    return frozenset(out)


@dataclass(frozen=True)
class OrbitRecord:
    sigma_W: tuple[int, ...]  # indices into Sigma (0-based)
    sigma_Zprime: tuple[RootVec, ...]  # simple-root coordinates
    sigma_Zprime_over_sigma: tuple[RootVec, ...]  # coordinates over the full Sigma
    doubling: tuple[RootVec, ...]  # subset of sigma_Zprime
    sigma_Z: tuple[RootVec, ...]
    dstar: tuple[str, ...]
    sp_Zprime: tuple[int, ...]
    class_id: int = -1
    is_minimal: bool = False

    @property
    def key(self) -> tuple[RootVec, ...]:
        return tuple(sorted(self.sigma_Z))

    def support_over_sigma(self) -> frozenset[int]:
        return frozenset(j for v in self.sigma_Zprime_over_sigma for j, c in enumerate(v) if c)


def orbit_image(sys: SphericalSystem, delta: Divisor, keep: Iterable[int]) -> OrbitRecord:
    keep_t = tuple(sorted(set(keep)))
    w, q = localize(sys, keep_t)
    delta_w = q(delta)
    dstar = max_distinguished_avoiding(w, delta_w.support)
    quo = quotient_system(w, dstar)
    zp = quo.result
    doubled = stabilizer_doubling(zp, delta_w)
    over = []
    for g in quo.new_sigma_in_old:
        v = [0] * sys.r
        for j, c in enumerate(g):
            v[keep_t[j]] = c
        over.append(tuple(v))
    sigma_z = tuple(
        tuple(2 * x for x in s) if i in doubled else s for i, s in enumerate(zp.sigma)
    )
    return OrbitRecord(
        sigma_W=keep_t,
        sigma_Zprime=zp.sigma,
        sigma_Zprime_over_sigma=tuple(over),
        doubling=tuple(zp.sigma[i] for i in sorted(doubled)),
        sigma_Z=sigma_z,
        dstar=tuple(sorted(dstar.subset)),
        sp_Zprime=tuple(sorted(zp.sp)),
    )


@dataclass(frozen=True)
class OrbitClass:
    class_id: int
    key: tuple[RootVec, ...]
    minimal: tuple[int, ...]
    members: tuple[tuple[int, ...], ...]
    maximal: tuple[tuple[int, ...], ...]
    record: OrbitRecord  # the minimal orbit's record

    @property
    def doubling(self) -> tuple[RootVec, ...]:
        return self.record.doubling


@dataclass(frozen=True)
class OrbitTable:
    system: SphericalSystem
    divisor: Divisor
    records: tuple[OrbitRecord, ...]
    classes: tuple[OrbitClass, ...]
    faithfulness: FaithfulnessReport
    tags: tuple[str, ...] = ()

    @property
    def bijective(self) -> bool:
        return all(not c.doubling for c in self.classes)

    def witnesses(self) -> list[OrbitClass]:
        return [c for c in self.classes if c.doubling]


def all_orbits(sys: SphericalSystem, delta: Divisor, guard: int = DEFAULT_ORBIT_GUARD) -> OrbitTable:
    if sys.r > guard:
        raise EnumerationGuardError(f"|Sigma| = {sys.r} exceeds the orbit guard {guard}")
    faith = check_faithful(sys, delta)
    tags = () if faith.faithful else ("unfaithful input",)
    subsets = [s for k in range(sys.r, -1, -1) for s in combinations(range(sys.r), k)]
    by_key: dict[tuple, list[OrbitRecord]] = {}
    recs: dict[tuple[int, ...], OrbitRecord] = {}
    for s in subsets:
        rec = orbit_image(sys, delta, s)
        recs[s] = rec
        by_key.setdefault(rec.key, []).append(rec)
    strict = is_strict(sys)
    classes = []
    for key, members in by_key.items():
        sup = members[0].support_over_sigma()
        minimal = tuple(sorted(sup))
        for m in members:
            if m.support_over_sigma() != sup:
                raise AssertionError("class members disagree on the support over Sigma")
            if not sup <= set(m.sigma_W):
                raise AssertionError("minimal orbit is not contained in a member")
        if minimal not in recs or recs[minimal].key != key:
            raise AssertionError(f"minimal orbit {minimal} does not map to its class")
        for m in members:
            _check_doubling(sys, m, strict)
        mset = [set(m.sigma_W) for m in members]
        maximal = tuple(sorted(
            (m.sigma_W for m, ms in zip(members, mset) if not any(ms < o for o in mset)),
            key=lambda t: (-len(t), t),
        ))
        classes.append((minimal, key, members, maximal))
    classes.sort(key=lambda c: (-len(c[0]), c[0]))
    zp_keys = [tuple(sorted(recs[c[0]].sigma_Zprime)) for c in classes]
    if len(set(zp_keys)) != len(zp_keys):
        raise AssertionError("two classes share the same normalization roots")
    out_classes = []
    out_records = []
    for cid, (minimal, key, members, maximal) in enumerate(classes):
        for m in members:
            out_records.append(_replace(m, class_id=cid, is_minimal=m.sigma_W == minimal))
        out_classes.append(OrbitClass(cid, key, minimal, tuple(m.sigma_W for m in members), maximal,
                                      _replace(recs[minimal], class_id=cid, is_minimal=True)))
    out_records.sort(key=lambda r: (-len(r.sigma_W), r.sigma_W))
    return OrbitTable(sys, delta, tuple(out_records), tuple(out_classes), faith, tags)


def _replace(rec: OrbitRecord, **kw) -> OrbitRecord:
    from dataclasses import replace

    return replace(rec, **kw)


def _check_doubling(sys: SphericalSystem, rec: OrbitRecord, strict: bool) -> None:
    for g in rec.doubling:
        j = rec.sigma_Zprime.index(g)
        coeffs = [c for c in rec.sigma_Zprime_over_sigma[j] if c]
        if any(c != 1 for c in coeffs):
            raise AssertionError(f"doubled root {g} is not a sum of distinct spherical roots")
        if strict:
            from .rootsys import try_classify

            k2 = try_classify(sys.rs, tuple(2 * x for x in g), rec.sp_Zprime)
            if k2 is None or k2.name != "B-II":
                raise AssertionError(f"strict system doubled a root {g} not of type B-I")
            ok = False
            for i, c in enumerate(rec.sigma_Zprime_over_sigma[j]):
                kind = sys.kinds[i]
                if c and kind is not None and kind.name == "B-I" and kind.rank == 2:
                    ok = True
            if not ok:
                raise AssertionError(f"doubled root {g} has no B2-I root in its support")
