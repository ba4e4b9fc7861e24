"""JSON input and output: systems, divisors, orbit tables.

Input format (see ``data/schema/system.schema.json``)::

    {
      "name": "so11_model",
      "root_system": "B5",
      "sigma": ["a1+a2", "a2+a3", "a3+a4", "a4+a5", "2a5"],
      "sp": [],
      "colors": [{"id": "A", "kind": "a", "moved_by": [1, 3], "pairing": [1, 0, 1, 0]}],
      "divisors": {"d_alpha2": {"D_a2": 1}}
    }

Simple roots are labelled from 1 everywhere in files and printed output.
Only colors of type a must be listed; colors of type 2a and b are derived,
and if listed anyway they are checked against the derived ones.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources
from typing import Any, Iterable, Mapping, Sequence

import jsonschema

from .orbits import OrbitRecord
from .rootsys import RootSystem, RootSystemError, format_rootvec, parse_rootvec
from .spherical import (
    KIND_A,
    Color,
    Divisor,
    SphericalSystem,
    SphericalSystemError,
    ValidationReport,
    make_system,
    validate,
)

FORMATS = ("json", "table", "tex")
TABLE_HEADER = ("Maximal Orbits", "Minimal Orbit", "Orbit in X~", "Orbit in X", "Sigma(delta_Z')")


class InputError(ValueError):
    """Malformed or invalid input; ``location`` is a JSON path like ``colors[2].pairing``."""

    def __init__(self, message: str, location: str = "", report: ValidationReport | None = None) -> None:
        self.location = location
        self.report = report
        super().__init__(f"{location}: {message}" if location else message)


@dataclass(frozen=True)
class ParsedInput:
    system: SphericalSystem
    divisors: dict[str, Divisor] = field(default_factory=dict)
    name: str = ""
    description: str = ""
    annotations: dict[str, Any] = field(default_factory=dict)
    expected: dict[str, Any] = field(default_factory=dict)

    def divisor(self, name: str) -> Divisor:
        try:
            return self.divisors[name]
        except KeyError:
            known = ", ".join(sorted(self.divisors)) or "none"
            raise InputError(f"unknown divisor {name!r} (known: {known})", "divisors") from None


@lru_cache(maxsize=None)
def load_schema(name: str = "system") -> dict:
    text = resources.files("sphericalorbits.data.schema").joinpath(f"{name}.schema.json").read_text()
    return json.loads(text)


def _path(err: jsonschema.ValidationError) -> str:
    out = ""
    for p in err.absolute_path:
        out += f"[{p}]" if isinstance(p, int) else (f".{p}" if out else str(p))
    return out


def _check_schema(doc: Any, name: str = "system") -> None:
    validator = jsonschema.Draft202012Validator(load_schema(name))
    errors = sorted(validator.iter_errors(doc), key=lambda e: (list(map(str, e.absolute_path)), e.message))
    if errors:
        e = jsonschema.exceptions.best_match(errors)
        raise InputError(f"schema violation: {e.message}", _path(e))


def _rootvec(item: Any, n: int, loc: str) -> tuple[int, ...]:
    if isinstance(item, str):
        try:
            return parse_rootvec(item, n)
        except ValueError as e:
            raise InputError(str(e), loc) from None
    if len(item) != n:
        raise InputError(f"expected {n} coefficients, got {len(item)}", loc)
    return tuple(int(x) for x in item)


def _labels(items: Iterable[int], n: int, loc: str) -> tuple[int, ...]:
    out = []
    for i, x in enumerate(items):
        if not 1 <= x <= n:
            raise InputError(f"simple root label {x} out of range 1..{n}", f"{loc}[{i}]")
        out.append(x - 1)
    return tuple(out)


def _load(data: bytes | str | Mapping) -> Any:
    if isinstance(data, Mapping):
        return data
    try:
        return json.loads(data)
    except json.JSONDecodeError as e:
        raise InputError(f"invalid JSON: {e.msg} at line {e.lineno} column {e.colno}") from None


def parse_input(data: bytes | str | Mapping) -> ParsedInput:
    """Parse and fully validate a system file."""
    doc = _load(data)
    _check_schema(doc)
    try:
        rs = RootSystem.parse(doc["root_system"])
    except (RootSystemError, ValueError) as e:
        raise InputError(str(e), "root_system") from None
    n = rs.n
    sigma = tuple(_rootvec(s, n, f"sigma[{i}]") for i, s in enumerate(doc["sigma"]))
    sp = _labels(doc.get("sp", []), n, "sp")
    a_colors: list[Color] = []
    listed: list[tuple[int, dict]] = []
    for i, c in enumerate(doc.get("colors", [])):
        loc = f"colors[{i}]"
        moved = _labels(c["moved_by"], n, f"{loc}.moved_by")
        if "pairing" in c and len(c["pairing"]) != len(sigma):
            raise InputError(f"pairing has {len(c['pairing'])} entries for {len(sigma)} spherical roots", f"{loc}.pairing")
        if c["kind"] == KIND_A:
            try:
                a_colors.append(Color(c["id"], KIND_A, moved, tuple(c["pairing"])))
            except (SphericalSystemError, ValueError) as e:
                raise InputError(str(e), loc) from None
        else:
            listed.append((i, c))
    ids = [c.id for c in a_colors]
    if len(set(ids)) != len(ids):
        raise InputError("duplicate color id", "colors")
    try:
        sys = make_system(rs, sigma, sp, a_colors)
    except SphericalSystemError as e:
        raise InputError(str(e), "sigma") from None
    for i, c in listed:
        loc = f"colors[{i}]"
        moved = tuple(sorted(_labels(c["moved_by"], n, f"{loc}.moved_by")))
        match = [d for d in sys.colors if d.kind != KIND_A and tuple(sorted(d.moved_by)) == moved]
        if not match or match[0].kind != c["kind"]:
            raise InputError(f"no derived color of kind {c['kind']} is moved by exactly {c['moved_by']}", loc)
        d = match[0]
        if "id" in c and c["id"] != d.id:
            raise InputError(f"derived color is named {d.id!r}, not {c['id']!r}", f"{loc}.id")
        if "pairing" in c and tuple(c["pairing"]) != d.pairing:
            raise InputError(f"pairing {c['pairing']} differs from the derived {list(d.pairing)}", f"{loc}.pairing")
    report = validate(sys)
    if not report.ok:
        v = report.violations[0]
        loc = ""
        if v.color is not None:
            loc = next((f"colors[{i}]" for i, c in enumerate(doc.get("colors", [])) if c.get("id") == v.color), f"color {v.color}")
        elif v.sigma is not None:
            loc = f"sigma[{v.sigma}]"
        raise InputError(f"invalid spherical system: {v}", loc, report)
    divisors = {}
    for name, mult in sorted(doc.get("divisors", {}).items()):
        for cid in mult:
            if not sys.has_color(cid):
                raise InputError(f"unknown color {cid!r}", f"divisors.{name}.{cid}")
        divisors[name] = Divisor.of(mult)
    return ParsedInput(
        system=sys,
        divisors=divisors,
        name=doc.get("name", ""),
        description=doc.get("description", ""),
        annotations=dict(doc.get("annotations", {})),
        expected=dict(doc.get("expected", {})),
    )


def serialize(parsed: ParsedInput) -> dict:
    """Canonical document for a parsed input; the inverse of :func:`parse_input`."""
    sys = parsed.system
    doc: dict[str, Any] = {
        "root_system": sys.rs.label,
        "sigma": [format_rootvec(s) for s in sys.sigma],
        "sp": sorted(a + 1 for a in sys.sp),
        "colors": [
            {"id": c.id, "kind": c.kind, "moved_by": sorted(a + 1 for a in c.moved_by), "pairing": list(c.pairing)}
            for c in sorted(sys.colors, key=lambda c: c.id) if c.kind == KIND_A
        ],
        "divisors": {k: v.as_dict() for k, v in sorted(parsed.divisors.items())},
    }
    if parsed.name:
        doc["name"] = parsed.name
    if parsed.description:
        doc["description"] = parsed.description
    if parsed.annotations:
        doc["annotations"] = parsed.annotations
    if parsed.expected:
        doc["expected"] = parsed.expected
    return doc


def normalize(data: bytes | str | Mapping) -> dict:
    """Canonical form of an input document, computed without building the system.

    Roots become strings, labels are sorted, derived colors are dropped and
    zero multiplicities are removed.
    """
    doc = dict(_load(data))
    _check_schema(doc)
    rs = RootSystem.parse(doc["root_system"])
    out: dict[str, Any] = {
        "root_system": rs.label,
        "sigma": [format_rootvec(_rootvec(s, rs.n, f"sigma[{i}]")) for i, s in enumerate(doc["sigma"])],
        "sp": sorted(doc.get("sp", [])),
        "colors": sorted(
            ({"id": c["id"], "kind": "a", "moved_by": sorted(c["moved_by"]), "pairing": list(c["pairing"])}
             for c in doc.get("colors", []) if c["kind"] == KIND_A),
            key=lambda c: c["id"],
        ),
        "divisors": {
            k: {cid: m for cid, m in sorted(v.items()) if m} for k, v in sorted(doc.get("divisors", {}).items())
        },
    }
    for key in ("name", "description", "annotations", "expected"):
        if doc.get(key):
            out[key] = doc[key]
    return out


def dumps(doc: Any) -> str:
    return json.dumps(doc, sort_keys=True, indent=2, ensure_ascii=True) + "\n"


# ---------------------------------------------------------------------------
# orbit tables


def _fmt_set(labels: Iterable[int]) -> str:
    return "{" + ",".join(str(i + 1) for i in labels) + "}"


def _fmt_roots(roots: Sequence[Sequence[int]]) -> str:
    return "{" + ", ".join(format_rootvec(v) for v in roots) + "}"


def record_to_json(rec: OrbitRecord) -> dict:
    return {
        "orbit": [i + 1 for i in rec.sigma_W],
        "class": rec.class_id,
        "minimal": rec.is_minimal,
        "sigma_W": [],  # filled by records_to_json, which knows Sigma
        "sigma_Zprime": [format_rootvec(v) for v in rec.sigma_Zprime],
        "sigma_Zprime_over_sigma": [list(v) for v in rec.sigma_Zprime_over_sigma],
        "sigma_Z": [format_rootvec(v) for v in rec.sigma_Z],
        "doubling": [format_rootvec(v) for v in rec.doubling],
        "dstar": list(rec.dstar),
        "sp_Zprime": [a + 1 for a in rec.sp_Zprime],
    }


def _sorted_records(records: Iterable[OrbitRecord]) -> list[OrbitRecord]:
    return sorted(records, key=lambda r: (r.class_id, -len(r.sigma_W), r.sigma_W))


def records_to_json(records: Iterable[OrbitRecord], sigma: Sequence[Sequence[int]] | None = None) -> list[dict]:
    out = []
    for rec in _sorted_records(records):
        d = record_to_json(rec)
        if sigma is not None:
            d["sigma_W"] = [format_rootvec(sigma[i]) for i in rec.sigma_W]
        out.append(d)
    return out


@dataclass(frozen=True)
class TableRow:
    maximal: tuple[tuple[int, ...], ...]
    minimal: tuple[int, ...]
    sigma_Zprime: tuple[tuple[int, ...], ...]
    sigma_Z: tuple[tuple[int, ...], ...]
    doubling: tuple[tuple[int, ...], ...]

    def to_json(self) -> dict:
        return {
            "maximal": [[i + 1 for i in m] for m in self.maximal],
            "minimal": [i + 1 for i in self.minimal],
            "sigma_Zprime": [format_rootvec(v) for v in self.sigma_Zprime],
            "sigma_Z": [format_rootvec(v) for v in self.sigma_Z],
            "doubling": [format_rootvec(v) for v in self.doubling],
        }


def table_rows(records: Iterable[OrbitRecord]) -> list[TableRow]:
    """Group records by class; one row per class, ordered by class id."""
    by_class: dict[int, list[OrbitRecord]] = {}
    for r in records:
        by_class.setdefault(r.class_id, []).append(r)
    rows = []
    for cid in sorted(by_class):
        members = by_class[cid]
        mins = [r for r in members if r.is_minimal]
        rep = mins[0] if mins else min(members, key=lambda r: (len(r.sigma_W), r.sigma_W))
        sets = [set(r.sigma_W) for r in members]
        maximal = sorted(
            (r.sigma_W for r, s in zip(members, sets) if not any(s < o for o in sets)),
            key=lambda t: (-len(t), t),
        )
        rows.append(TableRow(tuple(maximal), rep.sigma_W, rep.sigma_Zprime, rep.sigma_Z, rep.doubling))
    return rows


def _text_table(rows: list[TableRow]) -> str:
    cells = [list(TABLE_HEADER)]
    for r in rows:
        cells.append([
            " ".join(_fmt_set(m) for m in r.maximal),
            _fmt_set(r.minimal),
            _fmt_roots(r.sigma_Zprime),
            _fmt_roots(r.sigma_Z),
            _fmt_roots(r.doubling) if r.doubling else "-",
        ])
    widths = [max(len(row[k]) for row in cells) for k in range(len(TABLE_HEADER))]
    lines = []
    for j, row in enumerate(cells):
        lines.append(" | ".join(c.ljust(w) for c, w in zip(row, widths)).rstrip())
        if j == 0:
            lines.append("-+-".join("-" * w for w in widths))
    return "\n".join(lines) + "\n"


def _tex_table(rows: list[TableRow]) -> str:
    def roots(rs):
        return r"\sdiagram{" + ", ".join(format_rootvec(v) for v in rs) + "}"

    def tset(s):
        return r"$\{" + ",".join(str(i + 1) for i in s) + r"\}$"

    lines = [
        r"% \sdiagram{...} is a placeholder for the spherical diagram with the listed roots",
        r"\providecommand{\sdiagram}[1]{\texttt{#1}}",
        r"\begin{tabular}{|c|c|c|c|c|}",
        r"\hline",
        r"Maximal Orbits & Minimal Orbit & Orbit in $\widetilde{X}_\delta$ & Orbit in $X_\delta$ & $\Sigma(\delta_{Z'})$ \\",
        r"\hline",
    ]
    for r in rows:
        dbl = "$" + ", ".join(format_rootvec(v) for v in r.doubling) + "$" if r.doubling else r"$\emptyset$"
        lines.append(
            " & ".join([", ".join(tset(m) for m in r.maximal), tset(r.minimal), roots(r.sigma_Zprime), roots(r.sigma_Z), dbl])
            + r" \\"
        )
        lines.append(r"\hline")
    lines.append(r"\end{tabular}")
    return "\n".join(lines) + "\n"


def emit_orbit_table(records: Iterable[OrbitRecord], fmt: str = "table", sigma: Sequence[Sequence[int]] | None = None) -> bytes:
    """Render orbit records; output is byte-deterministic."""
    records = list(records)
    if fmt == "json":
        return dumps(records_to_json(records, sigma)).encode()
    rows = table_rows(records)
    if fmt == "table":
        return _text_table(rows).encode()
    if fmt == "tex":
        return _tex_table(rows).encode()
    raise ValueError(f"unknown format {fmt!r}; expected one of {', '.join(FORMATS)}")


def check_records_json(doc: Any) -> None:
    """Validate emitted JSON records against the shipped schema."""
    _check_schema(doc, "orbit_records")
