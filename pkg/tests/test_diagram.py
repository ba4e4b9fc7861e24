from __future__ import annotations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from systems import nonstrict_systems, strict_systems
from sphericalorbits.corpus import load_corpus, load_entry
from sphericalorbits.diagram import DiagramParseError, parse_diagram, render
from sphericalorbits.rootsys import RootSystem
from sphericalorbits.spherical import make_system

GENERATED = (
    list(strict_systems("B3")) + list(strict_systems("C3")) + list(strict_systems("G2"))
    + list(strict_systems("A1xA2")) + list(nonstrict_systems("A2", ((1, 0), (0, 1))))
)


def _row(text, name):
    return next(ln for ln in text.splitlines() if ln.startswith(name))


@pytest.mark.parametrize("entry", load_corpus(), ids=lambda e: e.name)
def test_round_trip_corpus(entry):
    assert parse_diagram(render(entry.system)).with_colors_sorted() == entry.system.with_colors_sorted()


@given(st.sampled_from(GENERATED))
def test_round_trip_generated(sys):
    assert parse_diagram(render(sys)).with_colors_sorted() == sys.with_colors_sorted()


def test_ex3_rendering():
    text = render(load_entry("ex3").system)
    assert _row(text, "dynkin").split()[1] == "o-----o-----o==>==o"
    assert _row(text, "types").split()[1:] == ["a"] * 4
    assert "Dp13  a   moved_by 1,3" in text


@pytest.mark.parametrize("label, link", [("B2", "==>=="), ("C2", "==<=="), ("G2", "=<<<="), ("F4", "==>==")])
def test_arrow_points_at_short_root(label, link):
    text = render(make_system(RootSystem.parse(label), [], ()))
    assert link in _row(text, "dynkin")


def test_branch_edges_listed():
    text = render(make_system(RootSystem.parse("D4"), [], ()))
    assert _row(text, "edges").split()[1:] == ["2-4"]
    sys = parse_diagram(text)
    assert sys.rs.label == "D4"


def test_parabolic_marker():
    sys = make_system(RootSystem.parse("A3"), [(1, 1, 1)], (1,))
    assert _row(render(sys), "types").split()[1:] == ["b", "p", "b"]


@pytest.mark.parametrize(
    "mutate, words",
    [
        (lambda t: t.replace("root system", "rootsystem"), "first line"),
        (lambda t: t.replace("colors\n", ""), "missing"),
        (lambda t: t.replace("types       a     a     a     a", "types       a     a     a"), "entries"),
        (lambda t: t.replace("types       a     a     a     a", "types       a     a     a     p"), "parabolic"),
        (lambda t: t.replace("1     .     .     .       a1", "1     1     .     .       a1"), "disagree"),
    ],
)
def test_parse_errors(mutate, words):
    text = mutate(render(load_entry("ex3").system))
    with pytest.raises((DiagramParseError, ValueError), match=words):
        parse_diagram(text)


def test_derived_colors_are_checked():
    text = render(load_entry("spin7_model").system)
    bad = text.replace("pairing 1 1", "pairing 1 0")
    with pytest.raises(DiagramParseError):
        parse_diagram(bad)
