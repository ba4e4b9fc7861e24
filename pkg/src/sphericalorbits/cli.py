"""Command-line interface.

Exit codes: 0 success (or "bijective"), 1 not bijective / invalid input
for ``validate``, 2 verdict unknown, 64 usage error, 65 input rejected,
70 internal inconsistency (criterion and pipeline disagree, or a golden
table does not replay).
"""
from __future__ import annotations

import argparse
import sys
from fractions import Fraction
from typing import Sequence

from .corpus import corpus_names, load_entry, run_all
from .criteria import NO, UNKNOWN, YES, CriterionError, Verdict, cross_check, nonstrict_sufficient, strict_bijectivity
from .diagram import render
from .io import FORMATS, InputError, ParsedInput, dumps, emit_orbit_table, serialize, table_rows
from .lattice import enumerate_distinguished, quotient_system
from .orbits import HypothesisError, all_orbits, check_faithful
from .rootsys import format_rootvec
from .spherical import SphericalSystemError, is_strict

EXIT_OK, EXIT_NO, EXIT_UNKNOWN = 0, 1, 2
EXIT_USAGE, EXIT_DATA, EXIT_SOFTWARE = 64, 65, 70
_VERDICT_EXIT = {YES: EXIT_OK, NO: EXIT_NO, UNKNOWN: EXIT_UNKNOWN}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # argparse exits with 2, which collides with "unknown"
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _out(data: str | bytes) -> None:
    if isinstance(data, str):
        data = data.encode()
    sys.stdout.buffer.write(data)
    sys.stdout.flush()


def _load(path: str) -> ParsedInput:
    try:
        return load_entry(path).parsed
    except FileNotFoundError:
        raise UsageError(f"no such file or bundled system: {path}") from None


def _divisor(parsed: ParsedInput, name: str | None):
    if name is None:
        if len(parsed.divisors) != 1:
            raise UsageError("--divisor is required (known: " + (", ".join(sorted(parsed.divisors)) or "none") + ")")
        name = next(iter(parsed.divisors))
    try:
        return name, parsed.divisor(name)
    except InputError as e:
        raise UsageError(str(e)) from None


def _verbatim(text: str) -> str:
    return "\\begin{verbatim}\n" + text + "\\end{verbatim}\n"


# ---------------------------------------------------------------------------
# subcommands


def cmd_validate(args) -> int:
    try:
        parsed = _load(args.input)
    except InputError as e:
        print(f"invalid: {e}", file=sys.stderr)
        if e.report is not None:
            for v in e.report.violations:
                print(f"  {v}", file=sys.stderr)
        return EXIT_NO
    sys_ = parsed.system
    problems = []
    for name, delta in sorted(parsed.divisors.items()):
        rep = check_faithful(sys_, delta)
        if not rep.faithful:
            problems.append(f"divisor {name} is not faithful: {rep.describe()}")
    for p in problems:
        print(f"warning: {p}", file=sys.stderr)
    kind = "strict" if is_strict(sys_) else "non-strict"
    print(f"ok: {parsed.name or args.input} ({sys_.rs.label}, rank {sys_.r}, {len(sys_.colors)} colors, {kind})")
    return EXIT_OK


def cmd_orbits(args) -> int:
    parsed = _load(args.input)
    _, delta = _divisor(parsed, args.divisor)
    table = all_orbits(parsed.system, delta)
    _out(emit_orbit_table(table.records, args.format, parsed.system.sigma))
    return EXIT_OK


def _verdict(parsed: ParsedInput, delta) -> Verdict:
    sys_ = parsed.system
    if is_strict(sys_):
        return strict_bijectivity(sys_, delta)
    return nonstrict_sufficient(sys_, delta)


def cmd_bijective(args) -> int:
    parsed = _load(args.input)
    name, delta = _divisor(parsed, args.divisor)
    sys_ = parsed.system
    try:
        verdict = _verdict(parsed, delta)
    except CriterionError as e:
        verdict = Verdict(UNKNOWN, (), f"criterion not applicable: {e}")
    doc: dict = {
        "system": parsed.name or args.input,
        "divisor": name,
        "strict": is_strict(sys_),
        "verdict": verdict.bijective,
        "method": verdict.method,
        "witnesses": [
            {"sigma": None if w.sigma is None else format_rootvec(sys_.sigma[w.sigma]), "clause": w.clause, "detail": w.detail}
            for w in verdict.witnesses
        ],
    }
    code = _VERDICT_EXIT[verdict.bijective]
    if args.cross_check:
        table = all_orbits(sys_, delta)
        try:
            rep = cross_check(sys_, delta, table)
            consistent, wit = rep.consistent, rep.witness_classes
        except CriterionError:
            consistent, wit = True, tuple(c.class_id for c in table.witnesses())
        rows = table_rows(table.records)
        by_id = {c.class_id: i for i, c in enumerate(table.classes)}
        doc["pipeline_bijective"] = table.bijective
        doc["consistent"] = consistent
        doc["witness_classes"] = [rows[by_id[k]].to_json() for k in wit]
        if not consistent:
            code = EXIT_SOFTWARE
        else:
            # the orbit pipeline is exact, so it settles an inconclusive criterion
            code = EXIT_OK if table.bijective else EXIT_NO
    _out(dumps(doc))
    return code


def cmd_quotient(args) -> int:
    parsed = _load(args.input)
    ids = [c for c in args.colors.split(",") if c]
    known = {c.id for c in parsed.system.colors}
    unknown = [c for c in ids if c not in known]
    if unknown:
        raise UsageError(f"unknown colors: {', '.join(unknown)} (known: {', '.join(sorted(known))})")
    q = quotient_system(parsed.system, ids)
    if args.format == "json":
        doc = serialize(ParsedInput(q.result))
        doc["quotient_of"] = parsed.name or args.input
        doc["distinguished"] = q.dsub.sorted_ids()
        doc["sigma_over_base"] = [list(g) for g in q.new_sigma_in_old]
        _out(dumps(doc))
    else:
        text = render(q.result)
        _out(text if args.format == "table" else _verbatim(text))
    return EXIT_OK


def _frac(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def cmd_distinguished(args) -> int:
    parsed = _load(args.input)
    subsets = sorted(enumerate_distinguished(parsed.system), key=lambda d: (len(d.subset), d.sorted_ids()))
    if args.format == "json":
        _out(dumps([{"subset": d.sorted_ids(), "witness": {c: _frac(w) for c, w in sorted(d.witness)}} for d in subsets]))
        return EXIT_OK
    lines = []
    for d in subsets:
        w = " ".join(f"{c}:{_frac(x)}" for c, x in sorted(d.witness))
        lines.append("{" + ", ".join(d.sorted_ids()) + "}" + (f"  witness {w}" if w else ""))
    text = "\n".join(lines) + ("\n" if lines else "")
    _out(text if args.format == "table" else _verbatim(text))
    return EXIT_OK


def cmd_render(args) -> int:
    parsed = _load(args.input)
    if args.format == "json":
        _out(dumps(serialize(parsed)))
    else:
        text = render(parsed.system)
        _out(text if args.format == "table" else _verbatim(text))
    return EXIT_OK


def cmd_corpus(args) -> int:
    if not args.run_all:
        for n in corpus_names():
            print(n)
        return EXIT_OK
    failed = 0
    for r in run_all():
        status = "ok" if r.ok else "FAIL"
        print(f"{status:4} {r.entry}/{r.divisor}")
        for p in r.problems:
            print(f"     {p}")
        failed += not r.ok
    print(f"{failed} failure(s)")
    return EXIT_SOFTWARE if failed else EXIT_OK


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="sphericalorbits", description="Orbits of projective orbit closures of wonderful varieties.")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, func, help, fmt=True, divisor=False):
        p = sub.add_parser(name, help=help, description=help)
        p.add_argument("-i", "--input", required=True, help="system file (JSON) or name of a bundled system")
        if divisor:
            p.add_argument("--divisor", help="name of a divisor listed in the input")
        if fmt:
            p.add_argument("--format", choices=FORMATS, default="table")
        p.set_defaults(func=func)
        return p

    add("validate", cmd_validate, "check a system file", fmt=False)
    add("orbits", cmd_orbits, "list the orbits of the closure and group them into classes", divisor=True)
    p = add("bijective", cmd_bijective, "decide whether the normalization is bijective", fmt=False, divisor=True)
    p.add_argument("--cross-check", action="store_true", help="also run the orbit pipeline and compare")
    p = add("quotient", cmd_quotient, "quotient by a distinguished set of colors")
    p.add_argument("--colors", required=True, help="comma-separated color ids")
    add("distinguished", cmd_distinguished, "list all distinguished subsets of colors")
    add("render", cmd_render, "print the spherical diagram")
    p = sub.add_parser("corpus", help="bundled examples", description="list or replay the bundled examples")
    p.add_argument("--run-all", action="store_true", help="replay every golden table")
    p.set_defaults(func=cmd_corpus)
    return ap


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except UsageError as e:
        print(f"sphericalorbits: error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except (InputError, SphericalSystemError, HypothesisError) as e:
        print(f"sphericalorbits: {e}", file=sys.stderr)
        return EXIT_DATA


if __name__ == "__main__":
    sys.exit(main())
