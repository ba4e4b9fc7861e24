"""Spherical systems: spherical roots, parabolic roots and colors.

A :class:`SphericalSystem` stores its colors explicitly together with the
full pairing against the spherical roots.  Colors of type 2a and b are
determined by the root system; those of type a carry free data.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache
from typing import Iterable, Mapping, Sequence

from .exact import rank
from .rootsys import (
    NotSphericalError,
    RootKind,
    RootSystem,
    classify_spherical_root,
    pairing_with_rootvec,
)

RootVec = tuple[int, ...]
KIND_A, KIND_2A, KIND_B = "a", "2a", "b"
COLOR_KINDS = (KIND_A, KIND_2A, KIND_B)


class SphericalSystemError(ValueError):
    """Structurally unusable spherical-system data."""


class PullbackError(SphericalSystemError):
    """The color pullback of a localization is not determined consistently."""


@dataclass(frozen=True)
class Color:
    id: str
    kind: str
    moved_by: tuple[int, ...]
    pairing: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.kind not in COLOR_KINDS:
            raise SphericalSystemError(f"color {self.id!r}: unknown kind {self.kind!r}")
        if not self.moved_by:
            raise SphericalSystemError(f"color {self.id!r}: moved_by is empty")
        object.__setattr__(self, "moved_by", tuple(sorted(set(self.moved_by))))
        object.__setattr__(self, "pairing", tuple(int(x) for x in self.pairing))

    def omega(self, n: int) -> tuple[int, ...]:
        w = [0] * n
        for a in self.moved_by:
            w[a] += 2 if self.kind == KIND_2A else 1
        return tuple(w)


def canonical_color_id(moved_by: Iterable[int]) -> str:
    return "D_" + "_".join(f"a{i + 1}" for i in sorted(moved_by))


@dataclass(frozen=True)
class SphericalSystem:
    rs: RootSystem
    sigma: tuple[RootVec, ...]
    sp: frozenset[int]
    colors: tuple[Color, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "sigma", tuple(tuple(int(c) for c in s) for s in self.sigma))
        object.__setattr__(self, "sp", frozenset(self.sp))
        ids = [c.id for c in self.colors]
        if len(set(ids)) != len(ids):
            raise SphericalSystemError("color ids are not unique")
        for s in self.sigma:
            if len(s) != self.rs.n:
                raise SphericalSystemError(f"root {s} has wrong length for rank {self.rs.n}")
        for c in self.colors:
            if len(c.pairing) != len(self.sigma):
                raise SphericalSystemError(f"color {c.id!r}: pairing length != |Sigma|")
            if any(not 0 <= a < self.rs.n for a in c.moved_by):
                raise SphericalSystemError(f"color {c.id!r}: moved_by index out of range")

    # -- basic views -------------------------------------------------------
    @property
    def n(self) -> int:
        return self.rs.n

    @property
    def r(self) -> int:
        return len(self.sigma)

    @cached_property
    def _sigma_index(self) -> dict[RootVec, int]:
        return {s: i for i, s in enumerate(self.sigma)}

    def sigma_index(self, v: Sequence[int]) -> int | None:
        return self._sigma_index.get(tuple(v))

    def unit(self, a: int) -> RootVec:
        return tuple(int(i == a) for i in range(self.n))

    @cached_property
    def s_a(self) -> frozenset[int]:
        return frozenset(a for a in range(self.n) if self.unit(a) in self._sigma_index)

    @cached_property
    def s_2a(self) -> frozenset[int]:
        return frozenset(a for a in range(self.n) if tuple(2 * x for x in self.unit(a)) in self._sigma_index)

    @cached_property
    def s_b(self) -> frozenset[int]:
        return frozenset(range(self.n)) - self.sp - self.s_a - self.s_2a

    @cached_property
    def _by_id(self) -> dict[str, Color]:
        return {c.id: c for c in self.colors}

    def color(self, cid: str) -> Color:
        try:
            return self._by_id[cid]
        except KeyError:
            raise SphericalSystemError(f"unknown color id {cid!r}") from None

    def has_color(self, cid: str) -> bool:
        return cid in self._by_id

    @cached_property
    def _delta(self) -> dict[int, tuple[Color, ...]]:
        out: dict[int, list[Color]] = {a: [] for a in range(self.n)}
        for c in self.colors:
            for a in c.moved_by:
                out[a].append(c)
        return {a: tuple(v) for a, v in out.items()}

    def delta(self, a: int) -> tuple[Color, ...]:
        """Colors moved by the simple root ``a``."""
        return self._delta[a]

    def pairing(self, cid: str, v: Sequence[int]) -> int:
        """c(D, v) for v in coordinates over Sigma."""
        row = self.color(cid).pairing
        return sum(x * y for x, y in zip(row, v))

    def coroot_pairing(self, a: int, sigma: Sequence[int]) -> int:
        return pairing_with_rootvec(self.rs, a, sigma)

    @cached_property
    def kinds(self) -> tuple[RootKind | None, ...]:
        out = []
        for s in self.sigma:
            try:
                out.append(classify_spherical_root(self.rs, s, self.sp))
            except NotSphericalError:
                out.append(None)
        return tuple(out)

    def key(self) -> tuple:
        return (self.rs, self.sigma, tuple(sorted(self.sp)), self.colors)

    def with_colors_sorted(self) -> "SphericalSystem":
        return SphericalSystem(self.rs, self.sigma, self.sp, tuple(sorted(self.colors, key=lambda c: c.id)))


# ---------------------------------------------------------------------------
# construction


def derived_colors(
    rs: RootSystem,
    sigma: Sequence[RootVec],
    sp: Iterable[int],
    skip: Iterable[int] = (),
    reserved_ids: Iterable[str] = (),
) -> list[Color]:
    """Colors of type 2a and b, with b-colors shared along orthogonal pairs.

    Roots in ``skip`` (typically S^a) get no derived color.
    """
    sigma = [tuple(s) for s in sigma]
    sset = set(sigma)
    sp = set(sp)
    skip = set(skip)
    reserved = set(reserved_ids)
    n = rs.n
    unit = lambda a: tuple(int(i == a) for i in range(n))  # noqa: E731
    s_a = {a for a in range(n) if unit(a) in sset}
    s_2a = {a for a in range(n) if tuple(2 * x for x in unit(a)) in sset}
    todo = [a for a in range(n) if a not in sp and a not in s_a and a not in skip]
    out: list[Color] = []
    done: set[int] = set()
    for a in todo:
        if a in done:
            continue
        if a in s_2a:
            row = []
            for s in sigma:
                p = pairing_with_rootvec(rs, a, s)
                row.append(Fraction(p, 2))
            if any(x.denominator != 1 for x in row):
                raise SphericalSystemError(f"odd pairing for 2a root a{a + 1}")
            out.append(Color(_fresh(canonical_color_id([a]), reserved), KIND_2A, (a,), tuple(int(x) for x in row)))
            done.add(a)
            continue
        group = [a]
        for b in todo:
            if b != a and b not in done and b not in s_2a and rs.matrix[a][b] == 0:
                if tuple(x + y for x, y in zip(unit(a), unit(b))) in sset:
                    group.append(b)
        done.update(group)
        row = tuple(pairing_with_rootvec(rs, a, s) for s in sigma)
        out.append(Color(_fresh(canonical_color_id(group), reserved), KIND_B, tuple(group), row))
    return out


def _fresh(cid: str, reserved: set[str]) -> str:
    while cid in reserved:
        cid += "'"
    reserved.add(cid)
    return cid


def make_system(
    rs: RootSystem,
    sigma: Sequence[Sequence[int]],
    sp: Iterable[int],
    a_colors: Iterable[Color | tuple[str, Sequence[int], Sequence[int]]] = (),
) -> SphericalSystem:
    """Build a system from (Sigma, S^p, a-colors); 2a and b colors are derived."""
    sigma_t = tuple(tuple(int(c) for c in s) for s in sigma)
    acs: list[Color] = []
    for c in a_colors:
        if not isinstance(c, Color):
            cid, mv, row = c
            c = Color(cid, KIND_A, tuple(mv), tuple(row))
        acs.append(c)
    extra = derived_colors(rs, sigma_t, sp, reserved_ids=[c.id for c in acs])
    return SphericalSystem(rs, sigma_t, frozenset(sp), tuple(acs + extra))


# ---------------------------------------------------------------------------
# validation


@dataclass(frozen=True)
class Violation:
    code: str
    message: str
    color: str | None = None
    sigma: int | None = None

    def __str__(self) -> str:
        loc = []
        if self.color is not None:
            loc.append(f"color={self.color}")
        if self.sigma is not None:
            loc.append(f"sigma={self.sigma + 1}")
        return f"[{self.code}] {self.message}" + (f" ({', '.join(loc)})" if loc else "")


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple[Violation, ...] = ()

    @property
    def ok(self) -> bool:
        return not self.violations

    def codes(self) -> set[str]:
        return {v.code for v in self.violations}

    def __str__(self) -> str:
        return "ok" if self.ok else "\n".join(str(v) for v in self.violations)


def validate(sys: SphericalSystem) -> ValidationReport:
    return _validate(sys)


@lru_cache(maxsize=4096)
def _validate(sys: SphericalSystem) -> ValidationReport:
    out: list[Violation] = []
    rs = sys.rs
    # roots: distinct, independent, in the catalogue
    if len(set(sys.sigma)) != len(sys.sigma):
        out.append(Violation("sigma_distinct", "spherical roots are not pairwise distinct"))
    elif sys.sigma and rank(sys.sigma) < len(sys.sigma):
        out.append(Violation("sigma_independent", "spherical roots are linearly dependent"))
    for i, s in enumerate(sys.sigma):
        if any(c < 0 for c in s) or not any(s):
            out.append(Violation("sigma_shape", "spherical root must be nonzero and nonnegative", sigma=i))
            continue
        try:
            classify_spherical_root(rs, s, sys.sp)
        except NotSphericalError as e:
            out.append(Violation("catalogue", f"not a catalogue root compatible with S^p: {e}", sigma=i))
    # partition of S and color counts
    overlap = sys.sp & (sys.s_a | sys.s_2a)
    for a in sorted(overlap):
        out.append(Violation("partition", f"a{a + 1} is parabolic but also (half) a spherical root"))
    for a in range(sys.n):
        d = sys.delta(a)
        want = 0 if a in sys.sp else 2 if a in sys.s_a else 1
        if len(d) != want:
            out.append(Violation("color_count", f"a{a + 1} moves {len(d)} colors, expected {want}"))
    for c in sys.colors:
        if c.kind == KIND_A:
            bad = [a for a in c.moved_by if a not in sys.s_a]
            if bad:
                out.append(Violation("a_moved_by", f"a-color moved by non-spherical simple root a{bad[0] + 1}", color=c.id))
        elif c.kind == KIND_2A:
            if len(c.moved_by) != 1 or c.moved_by[0] not in sys.s_2a:
                out.append(Violation("2a_moved_by", "2a-color must be moved by one root a with 2a in Sigma", color=c.id))
                continue
            a = c.moved_by[0]
            for i, s in enumerate(sys.sigma):
                p = sys.coroot_pairing(a, s)
                if p % 2:
                    out.append(Violation("2a_integrality", f"<a{a + 1}^vee, sigma> = {p} is odd", color=c.id, sigma=i))
                elif c.pairing[i] != p // 2:
                    out.append(Violation("2a_pairing", f"pairing {c.pairing[i]} != {p // 2}", color=c.id, sigma=i))
        else:
            for a in c.moved_by:
                if a in sys.s_a or a in sys.s_2a or a in sys.sp:
                    out.append(Violation("b_moved_by", f"b-color moved by a{a + 1} which is not of type b", color=c.id))
                for i, s in enumerate(sys.sigma):
                    p = sys.coroot_pairing(a, s)
                    if c.pairing[i] != p:
                        out.append(Violation("b_pairing", f"pairing {c.pairing[i]} != <a{a + 1}^vee, sigma> = {p}", color=c.id, sigma=i))
    sa_roots = {sys.sigma_index(sys.unit(a)) for a in sys.s_a}
    for c in sys.colors:
        if c.kind != KIND_A:
            continue
        for a in c.moved_by:
            i = sys.sigma_index(sys.unit(a))
            if i is not None and c.pairing[i] != 1:
                out.append(Violation("a_self", f"c(D, a{a + 1}) = {c.pairing[i]} != 1", color=c.id, sigma=i))
        for i, x in enumerate(c.pairing):
            if x > 1 or (x == 1 and i not in sa_roots):
                out.append(Violation("a_bound", f"c(D, sigma) = {x} but only simple spherical roots may pair to 1", color=c.id, sigma=i))
    for a in sorted(sys.s_2a):
        j = sys.sigma_index(tuple(2 * x for x in sys.unit(a)))
        for i, s in enumerate(sys.sigma):
            p = sys.coroot_pairing(a, s)
            if i != j and (p > 0 or p % 2):
                out.append(Violation("2a_sign", f"<a{a + 1}^vee, sigma> = {p} is not a nonpositive even integer", sigma=i))
    for a in range(sys.n):
        for b in range(a + 1, sys.n):
            if rs.matrix[a][b] != 0:
                continue
            v = tuple(int(k in (a, b)) for k in range(sys.n))
            hit = sys.sigma_index(v)
            if hit is None:
                hit = sys.sigma_index(tuple(2 * x for x in v))
            if hit is None:
                continue
            for i, s in enumerate(sys.sigma):
                if sys.coroot_pairing(a, s) != sys.coroot_pairing(b, s):
                    out.append(Violation("orthogonal_pair", f"a{a + 1} and a{b + 1} pair differently with a root", sigma=i))
    for a in sorted(sys.s_a):
        d = sys.delta(a)
        if len(d) != 2:
            continue
        for i, s in enumerate(sys.sigma):
            p = sys.coroot_pairing(a, s)
            if d[0].pairing[i] + d[1].pairing[i] != p:
                out.append(Violation(
                    "a_pair_sum",
                    f"c(D+,sigma)+c(D-,sigma) = {d[0].pairing[i] + d[1].pairing[i]} != <a{a + 1}^vee, sigma> = {p}",
                    color=d[0].id, sigma=i,
                ))
    return ValidationReport(tuple(out))


# ---------------------------------------------------------------------------
# divisors


@dataclass(frozen=True)
class Divisor:
    items: tuple[tuple[str, int], ...] = ()

    def __post_init__(self) -> None:
        agg: dict[str, int] = {}
        for cid, m in self.items:
            if m < 0:
                raise SphericalSystemError(f"negative multiplicity on {cid!r}")
            agg[cid] = agg.get(cid, 0) + int(m)
        object.__setattr__(self, "items", tuple(sorted((k, v) for k, v in agg.items() if v)))

    @classmethod
    def of(cls, mult: Mapping[str, int] | None = None, **kw: int) -> "Divisor":
        d = dict(mult or {})
        d.update(kw)
        return cls(tuple(d.items()))

    def n(self, cid: str) -> int:
        return dict(self.items).get(cid, 0)

    @property
    def support(self) -> frozenset[str]:
        return frozenset(k for k, v in self.items if v > 0)

    def as_dict(self) -> dict[str, int]:
        return dict(self.items)

    def __add__(self, other: "Divisor") -> "Divisor":
        return Divisor(self.items + other.items)

    def check(self, sys: SphericalSystem) -> None:
        for cid, _ in self.items:
            if not sys.has_color(cid):
                raise SphericalSystemError(f"divisor uses unknown color {cid!r}")


def omega_of_divisor(sys: SphericalSystem, delta: Divisor) -> tuple[int, ...]:
    w = [0] * sys.n
    for cid, m in delta.items:
        for i, x in enumerate(sys.color(cid).omega(sys.n)):
            w[i] += m * x
    return tuple(w)


# ---------------------------------------------------------------------------
# loose roots


@dataclass(frozen=True)
class LooseRoots:
    d: frozenset[int]  # indices into Sigma, non-simple loose roots
    s: frozenset[int]  # indices into Sigma, simple loose roots

    @property
    def all(self) -> frozenset[int]:
        return self.d | self.s


def loose_roots(sys: SphericalSystem) -> LooseRoots:
    d = set()
    s = set()
    for i, (v, kind) in enumerate(zip(sys.sigma, sys.kinds)):
        if kind is None:
            continue
        if kind.name == "B-I" and kind.short_root in sys.sp:
            d.add(i)
        elif kind.name == "G-I":
            d.add(i)
        elif kind.name == "Simple":
            a = v.index(1)
            cols = sys.delta(a)
            if len(cols) == 2 and cols[0].pairing == cols[1].pairing:
                s.add(i)
    return LooseRoots(frozenset(d), frozenset(s))


def is_strict(sys: SphericalSystem) -> bool:
    return not sys.s_a and not loose_roots(sys).all


# ---------------------------------------------------------------------------
# localization


@dataclass(frozen=True)
class Pullback:
    """Linear map on divisors from a system to one of its localizations."""

    images: tuple[tuple[str, tuple[tuple[str, int], ...]], ...]

    def image(self, cid: str) -> Divisor:
        return Divisor(dict(self.images)[cid])

    def __call__(self, delta: Divisor) -> Divisor:
        table = dict(self.images)
        items: list[tuple[str, int]] = []
        for cid, m in delta.items:
            items.extend((k, m * v) for k, v in table[cid])
        return Divisor(tuple(items))

    def then(self, other: "Pullback") -> "Pullback":
        return Pullback(tuple((cid, other(Divisor(img)).items) for cid, img in self.images))


def localize(sys: SphericalSystem, keep: Iterable[int]) -> tuple[SphericalSystem, Pullback]:
    """Localize at the spherical roots with indices ``keep``."""
    keep_t = tuple(sorted(set(keep)))
    if any(not 0 <= i < sys.r for i in keep_t):
        raise SphericalSystemError("localization set is not a subset of Sigma")
    return _localize(sys, keep_t)


@lru_cache(maxsize=65536)
def _localize(sys: SphericalSystem, keep: tuple[int, ...]) -> tuple[SphericalSystem, Pullback]:
    n = sys.n
    sigma_w = tuple(sys.sigma[i] for i in keep)
    sset_w = set(sigma_w)
    unit = sys.unit
    s_a_w = {a for a in range(n) if unit(a) in sset_w}
    # a-colors survive for simple roots still in Sigma'
    a_cols: list[Color] = []
    for c in sys.colors:
        if c.kind != KIND_A:
            continue
        mv = tuple(a for a in c.moved_by if a in s_a_w)
        if mv:
            a_cols.append(Color(c.id, KIND_A, mv, tuple(c.pairing[i] for i in keep)))
    derived = derived_colors(sys.rs, sigma_w, sys.sp, reserved_ids=[c.id for c in a_cols])
    w = SphericalSystem(sys.rs, sigma_w, sys.sp, tuple(a_cols + derived))
    slot: dict[int, str] = {}
    for c in derived:
        for a in c.moved_by:
            slot[a] = c.id
    images = []
    for c in sys.colors:
        img: dict[str, int] = {}
        for b in c.moved_by:
            if b in s_a_w:
                img[c.id] = 1
            elif c.kind == KIND_2A and b not in w.s_2a:
                img[slot[b]] = 2
            else:
                img[slot[b]] = 1
        images.append((c.id, tuple(sorted(img.items()))))
    q = Pullback(tuple(images))
    for c in sys.colors:
        if omega_of_divisor(w, q.image(c.id)) != c.omega(n):
            raise PullbackError(
                f"pullback of {c.id!r} does not preserve omega; "
                "the input system likely violates the orthogonal-pair axioms"
            )
    return w, q
