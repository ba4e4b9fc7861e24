"""Root-system arithmetic on simple roots.

Only simple roots, Cartan integers and fundamental-weight coordinates are
modelled.  Every component is stored in Bourbaki order; alternative
numberings (double-link-first for B and C) are derived views.
"""
from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from importlib import resources
from itertools import permutations
from typing import Iterable, Sequence

KINDS = ("A", "B", "C", "D", "E6", "E7", "E8", "F4", "G2")
_FIXED_RANK = {"E6": 6, "E7": 7, "E8": 8, "F4": 4, "G2": 2}
_MIN_RANK = {"A": 1, "B": 2, "C": 2, "D": 4}


class RootSystemError(ValueError):
    """Malformed root-system data or out-of-range index."""


class NotSphericalError(ValueError):
    """A vector matches no catalogue entry compatible with the given S^p."""


def _normalize_kind(kind: str, rank: int) -> str:
    k = kind.strip().upper()
    if k in ("E", "F", "G"):
        k = f"{k}{rank}"
    if k not in KINDS:
        raise RootSystemError(f"unknown Dynkin kind {kind!r}")
    return k


def cartan_matrix(kind: str, rank: int) -> tuple[tuple[int, ...], ...]:
    """Bourbaki Cartan matrix a[i][j] = <alpha_i^vee, alpha_j>."""
    kind = _normalize_kind(kind, rank)
    if kind in _FIXED_RANK and rank != _FIXED_RANK[kind]:
        raise RootSystemError(f"{kind} must have rank {_FIXED_RANK[kind]}, got {rank}")
    if kind in _MIN_RANK and rank < _MIN_RANK[kind]:
        raise RootSystemError(f"{kind}{rank} is not a valid Dynkin type")
    a = [[0] * rank for _ in range(rank)]
    for i in range(rank):
        a[i][i] = 2

    def link(i: int, j: int, aij: int = -1, aji: int = -1) -> None:
        a[i][j] = aij
        a[j][i] = aji

    if kind in ("A", "B", "C", "F4"):
        for i in range(rank - 1):
            link(i, i + 1)
        if kind == "B":
            # alpha_n short: <alpha_n^vee, alpha_{n-1}> = -2
            link(rank - 2, rank - 1, -1, -2)
        elif kind == "C":
            link(rank - 2, rank - 1, -2, -1)
        elif kind == "F4":
            link(1, 2, -1, -2)
    elif kind == "D":
        for i in range(rank - 2):
            link(i, i + 1)
        link(rank - 3, rank - 1)
    elif kind.startswith("E"):
        link(0, 2)
        link(1, 3)
        for i in range(2, rank - 1):
            link(i, i + 1)
    elif kind == "G2":
        link(0, 1, -3, -1)
    return tuple(tuple(r) for r in a)


@dataclass(frozen=True)
class DynkinComponent:
    kind: str
    rank: int
    offset: int = 0

    def __post_init__(self) -> None:
        if self.rank < 1:
            raise RootSystemError("rank must be positive")
        object.__setattr__(self, "kind", _normalize_kind(self.kind, self.rank))
        cartan_matrix(self.kind, self.rank)  # validates rank

    @property
    def indices(self) -> range:
        return range(self.offset, self.offset + self.rank)

    @property
    def label(self) -> str:
        return self.kind if self.kind in _FIXED_RANK else f"{self.kind}{self.rank}"

    def double_link_order(self) -> tuple[int, ...]:
        """Global indices numbered from the end containing the double link.

        B and C: alpha_n first.  F4: Bourbaki order (starts at a long root).
        Other kinds: Bourbaki order.
        """
        idx = tuple(self.indices)
        if self.kind in ("B", "C"):
            return idx[::-1]
        return idx


@dataclass(frozen=True)
class RootSystem:
    components: tuple[DynkinComponent, ...]

    @classmethod
    def from_spec(cls, spec: Iterable[tuple[str, int] | dict]) -> "RootSystem":
        comps = []
        off = 0
        for item in spec:
            if isinstance(item, dict):
                kind, rank = item["kind"], int(item["rank"])
            else:
                kind, rank = item
            comps.append(DynkinComponent(kind, rank, off))
            off += rank
        return cls(tuple(comps))

    @classmethod
    def parse(cls, text: str) -> "RootSystem":
        """Parse shorthand such as ``"B5"``, ``"A1xA1"`` or ``"E6"``."""
        parts = text.replace("×", "x").split("x")
        spec = []
        for p in parts:
            m = re.fullmatch(r"([A-Ga-g])(\d+)", p.strip())
            if m is None:
                raise RootSystemError(f"cannot parse Dynkin type {p.strip()!r} in {text!r}")
            spec.append((m.group(1).upper(), int(m.group(2))))
        return cls.from_spec(spec)

    def __post_init__(self) -> None:
        off = 0
        for c in self.components:
            if c.offset != off:
                raise RootSystemError("component offsets must be contiguous")
            off += c.rank

    @property
    def n(self) -> int:
        return sum(c.rank for c in self.components)

    @cached_property
    def matrix(self) -> tuple[tuple[int, ...], ...]:
        n = self.n
        a = [[0] * n for _ in range(n)]
        for c in self.components:
            m = cartan_matrix(c.kind, c.rank)
            for i in range(c.rank):
                for j in range(c.rank):
                    a[c.offset + i][c.offset + j] = m[i][j]
        return tuple(tuple(r) for r in a)

    def component_of(self, i: int) -> DynkinComponent:
        self._check(i)
        for c in self.components:
            if i in c.indices:
                return c
        raise AssertionError("unreachable")

    def _check(self, i: int) -> None:
        if not 0 <= i < self.n:
            raise RootSystemError(f"simple root index {i} out of range 0..{self.n - 1}")

    def cartan(self, i: int, j: int) -> int:
        self._check(i)
        self._check(j)
        return self.matrix[i][j]

    @property
    def simply_laced(self) -> bool:
        return all(c.kind in ("A", "D", "E6", "E7", "E8") for c in self.components)

    @property
    def label(self) -> str:
        return "x".join(c.label for c in self.components)

    def to_json(self) -> list[dict]:
        return [{"kind": c.kind, "rank": c.rank} for c in self.components]


def cartan_pairing(rs: RootSystem, i: int, j: int) -> int:
    return rs.cartan(i, j)


def support_of_weight(rs: RootSystem, weight: Sequence[int]) -> frozenset[int]:
    if len(weight) != rs.n:
        raise RootSystemError("weight length does not match rank")
    return frozenset(i for i, c in enumerate(weight) if c != 0)


def pairing_with_rootvec(rs: RootSystem, i: int, sigma: Sequence[int]) -> int:
    row = rs.matrix[i]
    return sum(row[j] * c for j, c in enumerate(sigma) if c)


def support(sigma: Sequence[int]) -> frozenset[int]:
    return frozenset(i for i, c in enumerate(sigma) if c)


# ---------------------------------------------------------------------------
# Subdiagram type detection


@dataclass(frozen=True)
class SubdiagramType:
    kind: str  # A, B, C, D, E6, E7, E8, F4, G2
    rank: int
    labelings: tuple[tuple[int, ...], ...]  # global indices in Bourbaki order


def _is_connected(rs: RootSystem, nodes: frozenset[int]) -> bool:
    if not nodes:
        return False
    start = next(iter(nodes))
    seen = {start}
    stack = [start]
    while stack:
        i = stack.pop()
        for j in nodes:
            if j not in seen and rs.matrix[i][j] != 0:
                seen.add(j)
                stack.append(j)
    return seen == set(nodes)


def subdiagram_type(rs: RootSystem, nodes: Iterable[int]) -> SubdiagramType:
    """Dynkin type of a connected set of simple roots with all Bourbaki labelings."""
    nodes = frozenset(nodes)
    return _subdiagram_type(rs, nodes)


@lru_cache(maxsize=4096)
def _subdiagram_type(rs: RootSystem, nodes: frozenset[int]) -> SubdiagramType:
    if not _is_connected(rs, nodes):
        raise RootSystemError("subdiagram is not connected")
    a = rs.matrix
    k = len(nodes)
    if k == 1:
        return SubdiagramType("A", 1, (tuple(nodes),))
    nbrs = {i: [j for j in nodes if j != i and a[i][j] != 0] for i in nodes}
    branch = [i for i in nodes if len(nbrs[i]) >= 3]
    if branch:
        b = branch[0]
        arms = []
        for start in nbrs[b]:
            arm = [start]
            prev, cur = b, start
            while True:
                nxt = [j for j in nbrs[cur] if j != prev]
                if not nxt:
                    break
                prev, cur = cur, nxt[0]
                arm.append(cur)
            arms.append(arm)
        arms.sort(key=len)
        lens = tuple(len(x) for x in arms)
        labs: list[tuple[int, ...]] = []
        if lens[0] == 1 and lens[1] == 1:
            kind = "D"
            for p in permutations(arms):
                if len(p[1]) != 1 or len(p[2]) != 1:
                    continue
                long_arm = list(reversed(p[0]))
                labs.append(tuple(long_arm + [b, p[1][0], p[2][0]]))
        elif lens in ((1, 2, 2), (1, 2, 3), (1, 2, 4)):
            kind = f"E{k}"
            short = arms[0]
            for x, y in ((arms[1], arms[2]), (arms[2], arms[1])):
                if len(x) != 2:
                    continue
                # alpha1 - alpha3 - alpha4(branch) - alpha5 ...; alpha2 on the short arm
                labs.append((x[1], short[0], x[0], b, *y))
        else:
            raise RootSystemError("subdiagram is not of finite type")
        return SubdiagramType(kind, k, tuple(sorted(set(labs))))
    ends = [i for i in nodes if len(nbrs[i]) == 1]
    path = [ends[0]]
    while len(path) < k:
        nxt = [j for j in nbrs[path[-1]] if j not in path]
        path.append(nxt[0])
    mult = [a[path[t]][path[t + 1]] * a[path[t + 1]][path[t]] for t in range(k - 1)]
    multiple = [t for t, m in enumerate(mult) if m > 1]
    if not multiple:
        labs = {tuple(path), tuple(reversed(path))}
        return SubdiagramType("A", k, tuple(sorted(labs)))
    if len(multiple) > 1:
        raise RootSystemError("subdiagram is not of finite type")
    t = multiple[0]
    if mult[t] == 3:
        i, j = path[0], path[1]
        short = i if a[i][j] == -3 else j
        long_ = j if short == i else i
        return SubdiagramType("G2", 2, ((short, long_),))
    # double link: node x is short iff a[x][y] = -2
    if t == k - 2 or t == 0:
        if t == 0:
            path = list(reversed(path))
        x, y = path[-1], path[-2]
        if k == 2:
            long_ = y if a[x][y] == -2 else x
            short = x if long_ == y else y
            return SubdiagramType("B", 2, ((long_, short),))
        kind = "B" if a[x][y] == -2 else "C"
        return SubdiagramType(kind, k, (tuple(path),))
    if k == 4 and t == 1:
        i, j = path[1], path[2]
        if a[i][j] == -2:  # path[1] short: reverse so long roots come first
            path = list(reversed(path))
        return SubdiagramType("F4", 4, (tuple(path),))
    raise RootSystemError("subdiagram is not of finite type")


# ---------------------------------------------------------------------------
# Rank-one catalogue


@dataclass(frozen=True)
class RootKind:
    """Catalogue classification of a spherical root."""

    name: str  # Simple, DoubledSimple, A-sum, A1xA1, B-I, B-II, G-I, G-II, Other
    rank: int  # size of the support
    tag: str = ""
    labeling: tuple[int, ...] = ()  # support in Bourbaki order of its subdiagram
    external: bool = False

    @property
    def short_root(self) -> int | None:
        """For B-type supports, the unique short simple root."""
        if self.name in ("B-I", "B-II") or self.tag.startswith("B"):
            return self.labeling[-1]
        return None

    def __str__(self) -> str:
        if self.name in ("B-I", "B-II", "A-sum"):
            return f"{self.name}({self.rank})"
        if self.name == "Other":
            return f"Other[{self.tag}]"
        return self.name


@dataclass(frozen=True)
class CatalogueEntry:
    tag: str
    kind: str
    support: str
    min_rank: int
    max_rank: int | None
    coeffs: str
    spp: str
    external: bool
    note: str = ""

    def coefficients(self, n: int) -> list[int]:
        return _expand(self.coeffs, n)

    def spp_labels(self, n: int) -> list[int]:
        """1-based Bourbaki labels that must lie in S^p."""
        out: list[int] = []
        for tok in self.spp.split(","):
            tok = tok.strip()
            if not tok:
                continue
            if ".." in tok:
                lo, hi = (_eval(x, n) for x in tok.split(".."))
                out.extend(range(lo, hi + 1))
            else:
                out.append(_eval(tok, n))
        return out


def _eval(expr: str, n: int) -> int:
    expr = expr.strip()
    if expr == "n":
        return n
    if expr.startswith("n-"):
        return n - int(expr[2:])
    return int(expr)


def _expand(pattern: str, n: int) -> list[int]:
    out: list[int] = []
    for tok in pattern.split():
        if "^" in tok:
            val, times = tok.split("^")
            out.extend([int(val)] * _eval(times.strip("()"), n))
        else:
            out.append(int(tok))
    return out


@lru_cache(maxsize=1)
def load_catalogue() -> tuple[CatalogueEntry, ...]:
    raw = json.loads(resources.files("sphericalorbits.data").joinpath("catalogue.json").read_text())
    return tuple(
        CatalogueEntry(
            tag=r["tag"], kind=r["kind"], support=r["support"], min_rank=r["min_rank"],
            max_rank=r.get("max_rank"), coeffs=r["coeffs"], spp=r.get("spp", ""),
            external=r.get("external", False), note=r.get("note", ""),
        )
        for r in raw["entries"]
    )


def classify_spherical_root(rs: RootSystem, sigma: Sequence[int], sp: Iterable[int]) -> RootKind:
    """Match ``sigma`` against the catalogue, requiring compatibility with ``sp``.

    Compatibility: the entry's mandatory parabolic roots lie in ``sp`` and every
    root of ``sp`` is orthogonal to ``sigma``.
    """
    sigma = tuple(int(c) for c in sigma)
    if len(sigma) != rs.n:
        raise RootSystemError("root vector length does not match rank")
    if any(c < 0 for c in sigma) or not any(sigma):
        raise NotSphericalError(f"{sigma} is not a nonzero nonnegative vector")
    sp = frozenset(sp)
    kind, reason = _classify(rs, sigma, sp)
    if kind is None:
        raise NotSphericalError(f"{sigma}: {reason}")
    return kind


def try_classify(rs: RootSystem, sigma: Sequence[int], sp: Iterable[int]) -> RootKind | None:
    try:
        return classify_spherical_root(rs, sigma, sp)
    except NotSphericalError:
        return None


@lru_cache(maxsize=65536)
def _classify(rs: RootSystem, sigma: tuple[int, ...], sp: frozenset[int]) -> tuple[RootKind | None, str]:
    supp = support(sigma)
    if any(pairing_with_rootvec(rs, a, sigma) != 0 for a in sp):
        return None, "a parabolic root is not orthogonal to it"
    cat = load_catalogue()
    if not _is_connected(rs, supp):
        i, j = sorted(supp) if len(supp) == 2 else (None, None)
        if i is not None and rs.matrix[i][j] == 0 and sigma[i] == 1 and sigma[j] == 1:
            return RootKind("A1xA1", 2, "A1xA1", (i, j)), ""
        return None, "disconnected support"
    st = _subdiagram_type(rs, supp)
    matched_incompatible = False
    for e in cat:
        if e.support != st.kind:
            continue
        if st.rank < e.min_rank or (e.max_rank is not None and st.rank > e.max_rank):
            continue
        pattern = e.coefficients(st.rank)
        for lab in st.labelings:
            if [sigma[i] for i in lab] != pattern:
                continue
            need = {lab[t - 1] for t in e.spp_labels(st.rank)}
            if not need <= sp:
                matched_incompatible = True
                continue
            name = e.kind
            return RootKind(name, st.rank, e.tag, lab, e.external), ""
    if matched_incompatible:
        return None, "pattern matches but required parabolic roots are missing"
    return None, f"no catalogue entry for support {st.kind}{st.rank}"


def double_vec(v: Sequence[int]) -> tuple[int, ...]:
    return tuple(2 * c for c in v)


def format_rootvec(v: Sequence[int], one_based: bool = True) -> str:
    """Human form such as ``a1+2a2+a3``."""
    terms = []
    for i, c in enumerate(v):
        if not c:
            continue
        name = f"a{i + 1 if one_based else i}"
        terms.append(name if c == 1 else f"{c}{name}")
    return "+".join(terms) if terms else "0"


def parse_rootvec(text: str, n: int) -> tuple[int, ...]:
    """Inverse of :func:`format_rootvec`."""
    v = [0] * n
    text = text.strip()
    if text == "0":
        return tuple(v)
    for term in text.split("+"):
        m = _TERM.fullmatch(term.strip())
        if m is None:
            raise ValueError(f"bad term {term.strip()!r} in root {text!r}; expected e.g. 'a1+2a2'")
        i = int(m.group(2))
        if not 1 <= i <= n:
            raise ValueError(f"simple root a{i} out of range 1..{n} in {text!r}")
        v[i - 1] += int(m.group(1) or 1)
    return tuple(v)


_TERM = re.compile(r"(\d*)\s*a(\d+)")
