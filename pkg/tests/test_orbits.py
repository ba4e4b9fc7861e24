from __future__ import annotations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from sphericalorbits.corpus import load_corpus, load_entry
from sphericalorbits.lattice import EnumerationGuardError
from sphericalorbits.orbits import HypothesisError, all_orbits, check_faithful, orbit_image, stabilizer_doubling
from sphericalorbits.spherical import Divisor, localize

RUNS = [(e, name) for e in load_corpus() for name in sorted(e.divisors)]
IDS = [f"{e.name}/{n}" for e, n in RUNS]


def test_spin7_codimension_one_orbit_doubles():
    e = load_entry("spin7_model")
    delta = e.parsed.divisor("d_alpha2")
    rec = orbit_image(e.system, delta, [1])  # the orbit with spherical root a2+a3
    assert rec.sigma_Zprime == ((0, 1, 1),)
    assert rec.sigma_Z == ((0, 2, 2),)
    assert rec.doubling == ((0, 1, 1),)


def test_spin7_other_orbits_do_not_double():
    e = load_entry("spin7_model")
    delta = e.parsed.divisor("d_alpha2")
    for keep in ([0, 1], [0], []):
        assert orbit_image(e.system, delta, keep).doubling == ()


def test_faithfulness_report_fields():
    e = load_entry("spin7_model")
    rep = check_faithful(e.system, Divisor.of(D_a3=1))
    assert not rep.fd1 and rep.fd1_witness == ("D_a1", "D_a2")
    assert "FD1" in rep.describe()
    assert check_faithful(e.system, e.parsed.divisor("d_alpha2")).describe() == "faithful"


def test_fd2_failure_on_equal_multiplicities():
    e = load_entry("sl2_torus")
    rep = check_faithful(e.system, Divisor.of(Dp=1, Dm=1))
    assert rep.fd1 and not rep.fd2 and rep.fd2_failures == (0,)
    assert stabilizer_doubling(e.system, Divisor.of(Dp=1, Dm=1)) == frozenset({0})
    assert stabilizer_doubling(e.system, Divisor.of(Dp=1, Dm=2)) == frozenset()


def test_stabilizer_doubling_checks_fd1():
    e = load_entry("spin7_model")
    with pytest.raises(HypothesisError):
        stabilizer_doubling(e.system, Divisor.of(D_a3=1))
    assert stabilizer_doubling(e.system, Divisor.of(D_a3=1), check=False) == frozenset()


def test_unfaithful_input_is_tagged():
    e = load_entry("spin7_model")
    t = all_orbits(e.system, Divisor.of(D_a3=1))
    assert "unfaithful input" in t.tags


def test_orbit_guard():
    e = load_entry("so11_model")
    with pytest.raises(EnumerationGuardError):
        all_orbits(e.system, e.parsed.divisor("d_alpha2"), guard=3)


@pytest.mark.parametrize("entry, name", RUNS, ids=IDS)
def test_table_invariants(entry, name):
    sys = entry.system
    t = all_orbits(sys, entry.parsed.divisor(name))
    assert len(t.records) == 2 ** sys.r
    assert t.faithfulness.faithful
    keys = [c.key for c in t.classes]
    assert len(set(keys)) == len(keys)
    by_w = {r.sigma_W: r for r in t.records}
    for c in t.classes:
        members = [by_w[w] for w in c.members]
        assert by_w[c.minimal].key == c.key
        assert by_w[c.minimal].is_minimal
        assert all(set(c.minimal) <= set(m.sigma_W) for m in members)
        assert all(m.key == c.key for m in members)
        assert set(c.maximal) <= set(c.members)
    # the open orbit and the closed orbit
    full = by_w[tuple(range(sys.r))]
    assert sorted(full.sigma_Zprime) == sorted(sys.sigma)
    assert by_w[()].sigma_Zprime == ()
    # doubling only ever doubles roots of Z'
    for r in t.records:
        assert set(r.doubling) <= set(r.sigma_Zprime)
        assert len(r.sigma_Z) == len(r.sigma_Zprime)


@given(st.sampled_from(RUNS), st.data())
def test_image_depends_only_on_class(run, data):
    entry, name = run
    sys = entry.system
    delta = entry.parsed.divisor(name)
    keep = sorted(data.draw(st.sets(st.integers(0, sys.r - 1))))
    rec = orbit_image(sys, delta, keep)
    # the image's roots expressed over Sigma only involve kept roots
    assert rec.support_over_sigma() <= set(keep)
    # localizing first and then taking the full orbit gives the same image
    w, q = localize(sys, keep)
    again = orbit_image(w, q(delta), range(w.r))
    assert again.sigma_Zprime == rec.sigma_Zprime
    assert again.sigma_Z == rec.sigma_Z
