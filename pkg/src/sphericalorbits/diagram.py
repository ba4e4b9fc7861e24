"""Plain-text spherical diagrams.

The rendering is meant for review of hand-transcribed systems; it is also
machine-readable, and ``parse_diagram(render(s)) == s`` for every valid
system ``s`` (up to the order of colors).  Example::

    root system B4
    nodes       1     2     3     4
    dynkin      o-----o-----o==>==o
    types       a     a     a     a
    sigma
      s1        1     .     .     .    a1
    ...
    colors
      A     a   moved_by 1,3   pairing 1 0 1 0

In the ``types`` row each simple root shows the kind of the colors it moves,
with ``p`` for parabolic roots.
"""
from __future__ import annotations

from .rootsys import RootSystem, format_rootvec, parse_rootvec
from .spherical import KIND_A, Color, SphericalSystem, SphericalSystemError, make_system, validate

CELL = 6


class DiagramParseError(ValueError):
    pass


def _link(rs: RootSystem, i: int, j: int) -> str:
    aij, aji = rs.matrix[i][j], rs.matrix[j][i]
    if aij == aji == -1:
        return "-----"
    if aij == aji == 0:
        return "     "
    # the arrow points at the short root; <a_short^vee, a_long> is -2 or -3
    arrow = ">" if abs(aji) > abs(aij) else "<"
    return "==" + arrow + "==" if min(aij, aji) == -2 else "=" + arrow * 3 + "="


def _side_edges(rs: RootSystem) -> list[tuple[int, int]]:
    """Edges of the Dynkin diagram not drawn by the linear layout."""
    out = []
    for i in range(rs.n):
        for j in range(i + 2, rs.n):
            if rs.matrix[i][j] != 0:
                out.append((i, j))
    return out


def _types(sys: SphericalSystem) -> list[str]:
    out = []
    for a in range(sys.n):
        if a in sys.sp:
            out.append("p")
        else:
            d = sys.delta(a)
            out.append(d[0].kind if d else "?")
    return out


def render(sys: SphericalSystem) -> str:
    rs = sys.rs
    n = rs.n
    lines = [f"root system {rs.label}"]
    lines.append("nodes".ljust(12) + "".join(str(a + 1).ljust(CELL) for a in range(n)).rstrip())
    dyn = ""
    for a in range(n):
        dyn += "o"
        if a + 1 < n:
            dyn += _link(rs, a, a + 1)
    lines.append("dynkin".ljust(12) + dyn.rstrip())
    side = _side_edges(rs)
    if side:
        lines.append("edges".ljust(12) + " ".join(f"{i + 1}-{j + 1}" for i, j in side))
    lines.append("types".ljust(12) + "".join(t.ljust(CELL) for t in _types(sys)).rstrip())
    lines.append("sigma")
    for i, s in enumerate(sys.sigma):
        kind = sys.kinds[i]
        cells = "".join((str(c) if c else ".").ljust(CELL) for c in s)
        lines.append(f"  s{i + 1}".ljust(12) + cells + "  " + format_rootvec(s) + (f"  [{kind}]" if kind else ""))
    lines.append("colors")
    width = max((len(c.id) for c in sys.colors), default=1) + 2
    for c in sorted(sys.colors, key=lambda c: c.id):
        moved = ",".join(str(a + 1) for a in c.moved_by)
        pairing = " ".join(str(x) for x in c.pairing)
        lines.append(f"  {c.id.ljust(width)}{c.kind.ljust(4)}moved_by {moved.ljust(8)}pairing {pairing}".rstrip())
    return "\n".join(lines) + "\n"


def parse_diagram(text: str) -> SphericalSystem:
    """Inverse of :func:`render`.  Only a-colors are read; the others are rederived and checked."""
    lines = [ln.rstrip() for ln in text.splitlines() if ln.strip()]
    if not lines or not lines[0].startswith("root system "):
        raise DiagramParseError("first line must be 'root system <type>'")
    rs = RootSystem.parse(lines[0][len("root system "):].strip())
    try:
        types_line = next(ln for ln in lines if ln.startswith("types"))
        s_at = lines.index("sigma")
        c_at = lines.index("colors")
    except (StopIteration, ValueError):
        raise DiagramParseError("missing 'types', 'sigma' or 'colors' section") from None
    types = types_line[len("types"):].split()
    if len(types) != rs.n:
        raise DiagramParseError(f"'types' row has {len(types)} entries, expected {rs.n}")
    sp = [a for a, t in enumerate(types) if t == "p"]
    sigma = []
    for ln in lines[s_at + 1:c_at]:
        parts = ln.split()
        if len(parts) < rs.n + 2:
            raise DiagramParseError(f"bad sigma row: {ln!r}")
        v = parse_rootvec(parts[rs.n + 1], rs.n)
        cells = tuple(0 if p == "." else int(p) for p in parts[1:rs.n + 1])
        if cells != v:
            raise DiagramParseError(f"sigma row coefficients disagree with {parts[rs.n + 1]}")
        sigma.append(v)
    a_colors: list[Color] = []
    listed: list[tuple[str, str, tuple[int, ...], tuple[int, ...]]] = []
    for ln in lines[c_at + 1:]:
        parts = ln.split()
        try:
            cid, kind = parts[0], parts[1]
            moved = tuple(int(x) - 1 for x in parts[parts.index("moved_by") + 1].split(","))
            pairing = tuple(int(x) for x in parts[parts.index("pairing") + 1:])
        except (IndexError, ValueError):
            raise DiagramParseError(f"bad color row: {ln!r}") from None
        if kind == KIND_A:
            a_colors.append(Color(cid, KIND_A, moved, pairing))
        else:
            listed.append((cid, kind, moved, pairing))
    try:
        sys = make_system(rs, sigma, sp, a_colors)
    except SphericalSystemError as e:
        raise DiagramParseError(str(e)) from None
    report = validate(sys)
    if not report.ok:
        raise DiagramParseError(f"invalid spherical system: {report.violations[0]}")
    derived = {(c.id, c.kind, c.moved_by, c.pairing) for c in sys.colors if c.kind != KIND_A}
    if set(listed) != derived:
        raise DiagramParseError("listed colors of type 2a/b differ from the derived ones")
    for a, t in enumerate(types):
        want = "p" if a in sys.sp else (sys.delta(a)[0].kind if sys.delta(a) else "?")
        if t != want:
            raise DiagramParseError(f"'types' entry {a + 1} is {t!r}, expected {want!r}")
    return sys
