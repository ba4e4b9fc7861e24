from __future__ import annotations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from systems import faithful_divisors, nonstrict_systems, strict_systems
from sphericalorbits.corpus import load_corpus, load_entry
from sphericalorbits.criteria import (
    INF,
    NO,
    UNKNOWN,
    YES,
    CriterionError,
    Verdict,
    Witness,
    b2i_roots,
    cross_check,
    model_bijectivity,
    nonstrict_sufficient,
    shape_classify,
    strict_bijectivity,
)
from sphericalorbits.orbits import all_orbits
from sphericalorbits.rootsys import RootSystem
from sphericalorbits.spherical import Divisor, omega_of_divisor

CORPUS = load_corpus()
MODELS = [e for e in CORPUS if e.annotations.get("model")]


@pytest.mark.parametrize(
    "name, root, shape",
    [
        ("so11_model", (0, 0, 0, 1, 1), "B1"),
        ("b4_model", (0, 0, 1, 1), "B1"),
        ("b5_chain_b2", (0, 0, 0, 1, 1), "B2"),
        ("c5_model", (0, 0, 0, 1, 1), "C1"),
        ("c5_shape_c2", (0, 0, 0, 1, 1), "C2"),
        ("f4_model", (0, 1, 1, 0), "F1"),
        ("spin7_model", (0, 1, 1), "Other"),
        ("b2_rank1", (1, 1), "Other"),
    ],
)
def test_shapes(name, root, shape):
    sys = load_entry(name).system
    sc = shape_classify(sys, sys.sigma.index(root))
    assert sc.shape == shape
    assert sc.flat_sharp_distinguished == (shape == "Other")


def test_so11_chain():
    sys = load_entry("so11_model").system
    sc = shape_classify(sys, 3)
    assert sc.m_sigma == 5
    assert sc.chain == (4, 3, 2, 1, 0)
    assert (sc.d_sharp, sc.d_flat) == ("D_a4", "D_a5")
    assert sc.chain_colors[:2] == ("D_a5", "D_a4")


def test_shape_needs_b2i_root():
    sys = load_entry("so11_model").system
    with pytest.raises(CriterionError):
        shape_classify(sys, 0)
    assert b2i_roots(sys) == [3]


def test_strict_criterion_rejects_nonstrict_systems():
    e = load_entry("ex3")
    with pytest.raises(CriterionError):
        strict_bijectivity(e.system, e.parsed.divisor("dplus_alpha1"))


def test_verdict_requires_witnesses_when_negative():
    with pytest.raises(AssertionError):
        Verdict(NO)
    assert Verdict(NO, (Witness(0, "i"),)).bijective == NO


@pytest.mark.parametrize("entry", CORPUS, ids=lambda e: e.name)
def test_corpus_verdicts_agree_with_pipeline(entry):
    for name, delta in entry.divisors.items():
        rep = cross_check(entry.system, delta)
        assert rep.consistent
        if rep.verdict.bijective == NO:
            assert rep.verdict.witnesses
            assert rep.witness_classes


SWEEP = ["A2", "A3", "B2", "B3", "C3", "G2", "A1xA1", "A1xA2", "B4"]


@pytest.mark.parametrize("label", SWEEP)
def test_strict_criterion_exhaustive(label):
    checked = 0
    for sys in strict_systems(label):
        for delta in faithful_divisors(sys, 2):
            v = strict_bijectivity(sys, delta)
            assert v.bijective in (YES, NO)
            assert (v.bijective == YES) == all_orbits(sys, delta).bijective, (sys.sigma, delta)
            checked += 1
    assert checked > 0


@pytest.mark.parametrize("entry", MODELS, ids=lambda e: e.name)
def test_model_dictionary(entry):
    sys = entry.system
    weights = entry.annotations.get("model_weights", {})
    assert set(weights) == set(entry.divisors)
    for name, delta in entry.divisors.items():
        assert tuple(weights[name]) == omega_of_divisor(sys, delta)
        assert model_bijectivity(sys.rs, weights[name]).bijective == strict_bijectivity(sys, delta).bijective


@pytest.mark.parametrize("label, sigma", [
    ("B4", [(1, 1, 0, 0), (0, 1, 1, 0), (0, 0, 1, 1), (0, 0, 0, 2)]),
    ("C4", [(1, 1, 0, 0), (0, 1, 1, 0), (0, 0, 1, 1)]),
    ("F4", [(1, 1, 0, 0), (0, 1, 1, 0), (0, 0, 1, 1)]),
])
def test_model_dictionary_all_small_weights(label, sigma):
    from sphericalorbits.spherical import make_system

    sys = make_system(RootSystem.parse(label), sigma, ())
    for delta in faithful_divisors(sys, 2):
        w = omega_of_divisor(sys, delta)
        assert model_bijectivity(sys.rs, w).bijective == strict_bijectivity(sys, delta).bijective


@pytest.mark.parametrize("weight, msg", [((0, 0, 0, 0, 0), "zero"), ((1, 2), "length"), ((0, -1, 0, 0, 0), "dominant")])
def test_model_bijectivity_errors(weight, msg):
    with pytest.raises(CriterionError, match=msg):
        model_bijectivity(RootSystem.parse("B5"), weight)


def test_infinity_sentinel_orders_above_integers():
    assert INF > 10 ** 9 and INF - 1 == INF


def test_nonstrict_clauses():
    e = load_entry("a2_nonstrict")
    v = nonstrict_sufficient(e.system, e.parsed.divisor("d_equal"))
    assert v.bijective == NO and v.witnesses[0].clause == "i"
    assert nonstrict_sufficient(e.system, e.parsed.divisor("d_unequal")).bijective == YES
    ex3 = load_entry("ex3")
    assert nonstrict_sufficient(ex3.system, ex3.parsed.divisor("dplus_alpha1")).bijective == UNKNOWN


NONSTRICT = (
    list(nonstrict_systems("A1", ((1,),)))
    + list(nonstrict_systems("A2", ((1, 0), (0, 1))))
    + list(nonstrict_systems("A1xA1", ((1, 0), (0, 1))))
    + list(nonstrict_systems("A2", ((1, 0),)))
    + list(nonstrict_systems("A3", ((1, 0, 0), (0, 1, 1))))
)


@pytest.mark.parametrize("idx", range(len(NONSTRICT)))
def test_nonstrict_sweep(idx):
    sys = NONSTRICT[idx]
    for delta in faithful_divisors(sys, 2):
        rep = cross_check(sys, delta)
        assert rep.consistent, (sys, delta)


@given(st.sampled_from([s for s in NONSTRICT if s.rs.simply_laced]), st.data())
def test_clause_ii_matches_pipeline(sys, data):
    divs = list(faithful_divisors(sys, 3))
    if not divs:
        return
    delta = data.draw(st.sampled_from(divs))
    v = nonstrict_sufficient(sys, delta)
    if v.bijective == YES:
        assert all_orbits(sys, delta).bijective
    if v.bijective == NO:
        assert not all_orbits(sys, delta).bijective
