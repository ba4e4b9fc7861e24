"""The bundled example corpus and golden-table replay."""
from __future__ import annotations

from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Any

from .criteria import CriterionError, nonstrict_sufficient, strict_bijectivity
from .io import ParsedInput, parse_input, table_rows
from .orbits import OrbitTable, all_orbits
from .spherical import Divisor, SphericalSystem, is_strict


@dataclass(frozen=True)
class CorpusEntry:
    name: str
    parsed: ParsedInput
    path: str = ""

    @property
    def system(self) -> SphericalSystem:
        return self.parsed.system

    @property
    def divisors(self) -> dict[str, Divisor]:
        return self.parsed.divisors

    @property
    def expected(self) -> dict[str, Any]:
        return self.parsed.expected

    @property
    def annotations(self) -> dict[str, Any]:
        return self.parsed.annotations

    @property
    def strict(self) -> bool:
        return is_strict(self.system)


def _corpus_dir():
    return resources.files("sphericalorbits.data.corpus")


def corpus_names() -> list[str]:
    return sorted(p.name[:-5] for p in _corpus_dir().iterdir() if p.name.endswith(".json"))


def load_entry(name_or_path: str) -> CorpusEntry:
    """Load a system file by path, or a bundled entry by name.

    ``so11_model`` and ``so11_model.json`` both name the bundled entry when no
    such file exists in the working directory.
    """
    p = Path(name_or_path)
    if p.exists():
        return CorpusEntry(p.stem, parse_input(p.read_bytes()), str(p))
    name = p.stem if p.suffix == ".json" and len(p.parts) == 1 else name_or_path
    res = _corpus_dir().joinpath(f"{name}.json")
    if not res.is_file():
        raise FileNotFoundError(name_or_path)
    return CorpusEntry(name, parse_input(res.read_bytes()), str(res))


def load_corpus() -> list[CorpusEntry]:
    return [load_entry(n) for n in corpus_names()]


def golden_classes(table: OrbitTable) -> list[dict]:
    return [row.to_json() for row in table_rows(table.records)]


def _canon(cls: dict) -> tuple:
    return (
        tuple(cls["minimal"]),
        tuple(sorted(tuple(m) for m in cls["maximal"])),
        tuple(sorted(cls["sigma_Zprime"])),
        tuple(sorted(cls["sigma_Z"])),
        tuple(sorted(cls["doubling"])),
    )


def compare_classes(got: list[dict], want: list[dict]) -> list[str]:
    """Differences between two class lists; order of classes and of roots inside a class is ignored."""
    g = {_canon(c)[0]: _canon(c) for c in got}
    w = {_canon(c)[0]: _canon(c) for c in want}
    out = []
    if len(got) != len(want):
        out.append(f"{len(got)} classes computed, {len(want)} expected")
    for key in sorted(set(g) | set(w)):
        if key not in g:
            out.append(f"class with minimal orbit {list(key)} missing")
        elif key not in w:
            out.append(f"unexpected class with minimal orbit {list(key)}")
        elif g[key] != w[key]:
            fields = ("minimal", "maximal", "sigma_Zprime", "sigma_Z", "doubling")
            bad = [f for f, a, b in zip(fields, g[key], w[key]) if a != b]
            out.append(f"class {list(key)} differs in {', '.join(bad)}")
    return out


def verdict_for(sys: SphericalSystem, delta: Divisor) -> str:
    try:
        v = strict_bijectivity(sys, delta) if is_strict(sys) else nonstrict_sufficient(sys, delta)
    except CriterionError:
        return "unknown"
    return v.bijective


@dataclass(frozen=True)
class ReplayResult:
    entry: str
    divisor: str
    ok: bool
    problems: tuple[str, ...] = ()
    table: OrbitTable | None = field(default=None, compare=False, repr=False)


def replay(entry: CorpusEntry) -> list[ReplayResult]:
    out = []
    for dname, exp in sorted(entry.expected.items()):
        delta = entry.parsed.divisor(dname)
        table = all_orbits(entry.system, delta)
        problems = []
        if "classes" in exp:
            problems += compare_classes(golden_classes(table), exp["classes"])
        if "bijective" in exp and exp["bijective"] != table.bijective:
            problems.append(f"pipeline bijective = {table.bijective}, expected {exp['bijective']}")
        if "verdict" in exp:
            v = verdict_for(entry.system, delta)
            if v != exp["verdict"]:
                problems.append(f"verdict {v}, expected {exp['verdict']}")
        out.append(ReplayResult(entry.name, dname, not problems, tuple(problems), table))
    return out


def run_all() -> list[ReplayResult]:
    out = []
    for e in load_corpus():
        out.extend(replay(e))
    return out
