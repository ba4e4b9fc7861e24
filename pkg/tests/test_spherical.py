from __future__ import annotations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from sphericalorbits.corpus import load_corpus
from sphericalorbits.rootsys import RootSystem
from sphericalorbits.spherical import (
    KIND_2A,
    KIND_A,
    KIND_B,
    Color,
    Divisor,
    SphericalSystem,
    SphericalSystemError,
    is_strict,
    localize,
    loose_roots,
    make_system,
    omega_of_divisor,
    validate,
)

CORPUS = load_corpus()
SYSTEMS = [e.system for e in CORPUS]


def sys_of(label, sigma, sp=(), colors=()):
    return make_system(RootSystem.parse(label), sigma, sp, colors)


def test_derived_b_colors_carry_coroot_pairings():
    s = sys_of("B3", [(1, 1, 0), (0, 1, 1)])
    assert {c.kind for c in s.colors} == {KIND_B}
    # rows of the B3 Cartan matrix applied to a1+a2 and a2+a3
    assert s.color("D_a1").pairing == (1, -1)
    assert s.color("D_a2").pairing == (1, 1)
    assert s.color("D_a3").pairing == (-2, 0)


def test_derived_2a_color_halves_the_pairing():
    s = sys_of("A2", [(2, 0), (0, 2)])
    c = s.delta(0)[0]
    assert c.kind == KIND_2A
    assert c.pairing == (2, -1)
    assert c.omega(2) == (2, 0)


def test_b_color_shared_along_orthogonal_pair():
    s = sys_of("A1xA1", [(1, 1)])
    assert len(s.colors) == 1
    assert s.colors[0].moved_by == (0, 1)


def test_odd_pairing_for_2a_root_is_rejected():
    with pytest.raises(SphericalSystemError):
        sys_of("C3", [(1, 1, 0), (0, 1, 1), (0, 0, 2)])


@pytest.mark.parametrize("entry", CORPUS, ids=lambda e: e.name)
def test_corpus_systems_validate(entry):
    assert validate(entry.system).ok, str(validate(entry.system))


def _codes(sys):
    return validate(sys).codes()


def test_violation_codes():
    rs = RootSystem.parse("A2")
    b = lambda a, row: Color(f"b{a}", KIND_B, (a,), row)  # noqa: E731
    assert "sigma_distinct" in _codes(SphericalSystem(rs, ((1, 1), (1, 1)), frozenset(), ()))
    assert "sigma_independent" in _codes(SphericalSystem(rs, ((1, 0), (0, 1), (1, 1)), frozenset(), ()))
    assert "sigma_shape" in _codes(SphericalSystem(rs, ((1, -1),), frozenset(), ()))
    assert "catalogue" in _codes(SphericalSystem(rs, ((1, 2),), frozenset(), (b(0, (0,)), b(1, (3,)))))
    assert "color_count" in _codes(SphericalSystem(rs, ((1, 1),), frozenset(), (b(0, (1,)),)))
    s = SphericalSystem(rs, ((1, 1),), frozenset(), (b(0, (1,)), b(1, (0,))))
    assert "b_pairing" in _codes(s)


def test_a_color_axioms():
    rs = RootSystem.parse("A1")
    ok = SphericalSystem(rs, ((1,),), frozenset(), (Color("p", KIND_A, (0,), (1,)), Color("m", KIND_A, (0,), (1,))))
    assert validate(ok).ok
    bad_sum = SphericalSystem(rs, ((1,),), frozenset(), (Color("p", KIND_A, (0,), (1,)), Color("m", KIND_A, (0,), (0,))))
    assert {"a_self", "a_pair_sum"} <= _codes(bad_sum)
    rs2 = RootSystem.parse("A2")
    big = make_system(rs2, [(1, 0), (0, 1)], (), [("p1", (0,), (1, 1)), ("m1", (0,), (1, -2)),
                                                  ("p2", (1,), (0, 1)), ("m2", (1,), (-1, 1))])
    assert "a_pair_sum" not in _codes(big)
    assert validate(big).ok
    wrong = make_system(rs2, [(1, 0), (0, 1)], (), [("p1", (0,), (1, 2)), ("m1", (0,), (1, -3)),
                                                    ("p2", (1,), (0, 1)), ("m2", (1,), (-1, 1))])
    assert "a_bound" in _codes(wrong)


def test_a_color_moved_by_nonspherical_root():
    rs = RootSystem.parse("A2")
    s = make_system(rs, [(1, 0)], (), [("p", (0, 1), (1,)), ("m", (0,), (1,))])
    assert "a_moved_by" in _codes(s)


def test_partition_and_parabolic_checks():
    rs = RootSystem.parse("A2")
    s = SphericalSystem(rs, ((1, 0),), frozenset({0}), (Color("p", KIND_A, (0,), (1,)),))
    assert "partition" in _codes(s)


def test_2a_sign_axiom():
    # 2a1 next to a2 in A2: <a1^vee, a2> = -1 is odd
    rs = RootSystem.parse("A2")
    s = SphericalSystem(rs, ((2, 0), (0, 1)), frozenset(), (Color("d", KIND_2A, (0,), (1, 0)),))
    assert {"2a_sign", "2a_integrality"} <= _codes(s)


def test_orthogonal_pair_axiom():
    # a1+a2 is an A1xA1 root, yet a2+a3 pairs 0 with a1 and 1 with a2
    rs = RootSystem.parse("A1xA2")
    s = make_system(rs, [(1, 1, 0), (0, 1, 1)], ())
    assert "orthogonal_pair" in _codes(s)


def test_divisor_normalization():
    d = Divisor.of({"x": 1, "y": 0}, x=2)
    assert d.as_dict() == {"x": 2}
    assert (d + Divisor.of(y=3)).as_dict() == {"x": 2, "y": 3}
    assert d.support == frozenset({"x"})
    assert d.n("z") == 0
    with pytest.raises(SphericalSystemError):
        Divisor.of(x=-1)


def test_divisor_check_unknown_color():
    s = sys_of("B3", [(1, 1, 0), (0, 1, 1)])
    with pytest.raises(SphericalSystemError):
        Divisor.of(nope=1).check(s)


def test_omega_counts_2a_colors_twice():
    s = sys_of("A2", [(2, 0), (0, 2)])
    ids = {c.moved_by[0]: c.id for c in s.colors}
    assert omega_of_divisor(s, Divisor.of({ids[0]: 1, ids[1]: 3})) == (2, 6)


def test_loose_roots():
    b3 = sys_of("B3", [(1, 1, 1)], sp=(1, 2))
    assert loose_roots(b3).d == frozenset({0})
    g2 = sys_of("G2", [(2, 1)])
    assert loose_roots(g2).d == frozenset({0})
    a1 = sys_of("A1", [(1,)], colors=[("p", (0,), (1,)), ("m", (0,), (1,))])
    assert loose_roots(a1).s == frozenset({0})
    assert not is_strict(a1)
    assert is_strict(sys_of("B3", [(1, 1, 0), (0, 1, 1)]))


@pytest.mark.parametrize("entry", CORPUS, ids=lambda e: e.name)
def test_strictness_matches_corpus_kind(entry):
    has_a = any(c.kind == KIND_A for c in entry.system.colors)
    if has_a:
        assert not entry.strict


def test_localize_full_and_empty():
    s = sys_of("B3", [(1, 1, 0), (0, 1, 1)])
    w, q = localize(s, range(s.r))
    assert w.sigma == s.sigma
    assert all(q.image(c.id).as_dict() == {c.id: 1} for c in s.colors)
    e, qe = localize(s, ())
    assert e.sigma == ()
    assert all(c.kind == KIND_B for c in e.colors)
    with pytest.raises(SphericalSystemError):
        localize(s, [5])


@given(st.sampled_from(SYSTEMS), st.data())
def test_localization_is_valid_and_preserves_omega(sys, data):
    keep = data.draw(st.sets(st.integers(0, sys.r - 1)))
    w, q = localize(sys, keep)
    assert validate(w).ok
    for c in sys.colors:
        assert omega_of_divisor(w, q.image(c.id)) == c.omega(sys.n)


@given(st.sampled_from(SYSTEMS), st.data())
def test_localization_is_transitive(sys, data):
    outer = sorted(data.draw(st.sets(st.integers(0, sys.r - 1))))
    inner = data.draw(st.sets(st.sampled_from(range(len(outer))))) if outer else set()
    w1, q1 = localize(sys, outer)
    w2, q2 = localize(w1, inner)
    w3, q3 = localize(sys, [outer[i] for i in inner])
    assert w2.sigma == w3.sigma
    for c in sys.colors:
        assert omega_of_divisor(w2, q2(q1.image(c.id))) == omega_of_divisor(w3, q3.image(c.id))
