"""Regenerate the regression entries of the bundled corpus.

Entries whose golden data is hand-transcribed (source "transcribed") are
never touched.  Every divisor listed here is checked to be faithful, and
the verdict stored with it is cross-checked against the orbit pipeline
before anything is written.

    python3 tools/make_corpus.py [--check]
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from sphericalorbits.corpus import golden_classes, verdict_for
from sphericalorbits.criteria import cross_check
from sphericalorbits.io import dumps, normalize, parse_input
from sphericalorbits.orbits import all_orbits, check_faithful
from sphericalorbits.spherical import omega_of_divisor

CORPUS = Path(__file__).resolve().parents[1] / "src" / "sphericalorbits" / "data" / "corpus"


def chain(n: int, first: int = 1) -> list[str]:
    return [f"a{i}+a{i + 1}" for i in range(first, n)]


def model(name, rs, sigma, divisors, description):
    return dict(name=name, root_system=rs, sigma=sigma, divisors=divisors, description=description,
                annotations={"model": True})


ENTRIES = [
    model("spin7_model", "B3", chain(3), {"d_alpha2": {"D_a2": 1}, "d_alpha23": {"D_a2": 1, "D_a3": 1}},
          "Wonderful model variety of Spin(7). With d_alpha2 the codimension one orbit a2+a3 doubles to 2a2+2a3."),
    model("b4_model", "B4", chain(4) + ["2a4"],
          {"d_alpha2": {"D_a2": 1}, "d_alpha3": {"D_a3": 1}, "d_alpha4": {"D_a4": 1}, "d_alpha13": {"D_a1": 1, "D_a3": 1}},
          "Wonderful model variety of SO(9)."),
    model("b6_model", "B6", chain(6) + ["2a6"], {"d_alpha2": {"D_a2": 1}, "d_alpha3": {"D_a3": 1}, "d_alpha6": {"D_a6": 1}},
          "Wonderful model variety of SO(13)."),
    model("c4_model", "C4", chain(4), {"d_alpha12": {"D_a1": 1, "D_a2": 1}, "d_alpha14": {"D_a1": 1, "D_a4": 1}, "d_alpha34": {"D_a3": 1, "D_a4": 1}},
          "Wonderful model variety of Sp(8)."),
    model("c5_model", "C5", chain(5), {"d_alpha14": {"D_a1": 1, "D_a4": 1}, "d_alpha25": {"D_a2": 1, "D_a5": 1}},
          "Wonderful model variety of Sp(10)."),
    model("f4_model", "F4", chain(4), {"d_alpha2": {"D_a2": 1}, "d_alpha23": {"D_a2": 1, "D_a3": 1}, "d_alpha24": {"D_a2": 1, "D_a4": 1}},
          "Wonderful model variety of F4."),
    dict(name="b2_rank1", root_system="B2", sigma=["a1+a2"], divisors={"d_both": {"D_a1": 1, "D_a2": 1}},
         description="Rank one system with a single B2-I root; only the divisor meeting both colors is faithful."),
    dict(name="b5_chain_b2", root_system="B5", sigma=["a4+a5", "a3+a4", "a2+a3"],
         divisors={"d_alpha4": {"D_a4": 1}, "d_alpha45": {"D_a4": 1, "D_a5": 1}, "d_alpha235": {"D_a2": 1, "D_a3": 1, "D_a5": 1}},
         description="A2 chain ending in a B2-I root without 2a5 (shape B2)."),
    dict(name="c5_shape_c2", root_system="C5", sigma=["a4+a5", "a2+a3", "a1+a4"],
         divisors={"d_alpha25": {"D_a2": 1, "D_a5": 1}, "d_alpha14": {"D_a1_a4": 1}, "d_alpha145": {"D_a1_a4": 1, "D_a5": 1}},
         description="B2-I root whose neighbour a4 also lies in an A1xA1 root (shape C2)."),
    dict(name="a3_model", root_system="A3", sigma=chain(3), divisors={"d_alpha12": {"D_a1": 1, "D_a2": 1}, "d_alpha123": {"D_a1": 1, "D_a2": 1, "D_a3": 1}},
         description="Wonderful model variety of SL(4); simply laced and strict."),
    dict(name="a4_doubled", root_system="A4", sigma=["2a1", "2a2", "2a3", "2a4"],
         divisors={"d_alpha1": {"D_a1": 1}, "d_all": {"D_a1": 1, "D_a2": 1, "D_a3": 1, "D_a4": 1}},
         description="Symmetric system PGL(5)/PO(5); every simple root doubled."),
    dict(name="a3_parabolic", root_system="A3", sigma=["a1+a2+a3"], sp=[2], divisors={"d_alpha13": {"D_a1": 1, "D_a3": 1}},
         description="Rank one A3 root with the middle simple root parabolic."),
    dict(name="sl2_torus", root_system="A1", sigma=["a1"],
         colors=[{"id": "Dp", "kind": "a", "moved_by": [1], "pairing": [1]}, {"id": "Dm", "kind": "a", "moved_by": [1], "pairing": [1]}],
         divisors={"d_12": {"Dp": 1, "Dm": 2}, "d_21": {"Dp": 2, "Dm": 1}},
         description="SL(2)/T, the product of two projective lines."),
    dict(name="a2_nonstrict", root_system="A2", sigma=["a1", "a2"],
         colors=[{"id": "Dp1", "kind": "a", "moved_by": [1], "pairing": [1, -1]}, {"id": "Dm1", "kind": "a", "moved_by": [1], "pairing": [1, 0]},
                 {"id": "Dp2", "kind": "a", "moved_by": [2], "pairing": [-1, 1]}, {"id": "Dm2", "kind": "a", "moved_by": [2], "pairing": [0, 1]}],
         divisors={"d_equal": {"Dp1": 1, "Dm1": 1, "Dm2": 2}, "d_unequal": {"Dp1": 2, "Dm1": 1, "Dm2": 1}},
         description="Non-strict simply laced system with both simple roots spherical."),
    dict(name="a1xa1_shared", root_system="A1xA1", sigma=["a1", "a2"],
         colors=[{"id": "D12", "kind": "a", "moved_by": [1, 2], "pairing": [1, 1]}, {"id": "Dm1", "kind": "a", "moved_by": [1], "pairing": [1, -1]},
                 {"id": "Dm2", "kind": "a", "moved_by": [2], "pairing": [-1, 1]}],
         divisors={"d_equal": {"D12": 1, "Dm2": 1}, "d_unequal": {"D12": 1, "Dm1": 2}},
         description="Non-strict system with a color moved by both simple roots."),
]


def build(spec: dict) -> dict:
    doc = {"sp": [], "colors": [], **spec}
    parsed = parse_input(doc)
    sys_ = parsed.system
    expected = {}
    for dname, delta in sorted(parsed.divisors.items()):
        rep = check_faithful(sys_, delta)
        if not rep.faithful:
            raise SystemExit(f"{spec['name']}/{dname}: not faithful ({rep.describe()})")
        table = all_orbits(sys_, delta)
        cc = cross_check(sys_, delta, table)
        if not cc.consistent:
            raise SystemExit(f"{spec['name']}/{dname}: verdict disagrees with the pipeline")
        expected[dname] = {
            "source": "regression",
            "bijective": table.bijective,
            "verdict": verdict_for(sys_, delta),
            "classes": golden_classes(table),
        }
        if doc.get("annotations", {}).get("model"):
            doc["annotations"].setdefault("model_weights", {})[dname] = list(omega_of_divisor(sys_, delta))
    doc["expected"] = expected
    return normalize(doc)


def main(argv: list[str] | None = None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--check", action="store_true", help="fail if any file would change")
    args = ap.parse_args(argv)
    stale = []
    for spec in ENTRIES:
        path = CORPUS / f"{spec['name']}.json"
        if path.exists() and any(e.get("source") == "transcribed" for e in json.loads(path.read_text()).get("expected", {}).values()):
            continue
        text = dumps(build(spec))
        if path.exists() and path.read_text() == text:
            continue
        stale.append(path.name)
        if not args.check:
            path.write_text(text)
    for name in stale:
        print(("stale: " if args.check else "wrote: ") + name)
    return 1 if (args.check and stale) else 0


if __name__ == "__main__":
    sys.exit(main())
