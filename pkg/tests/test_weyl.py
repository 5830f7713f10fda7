import random
from fractions import Fraction

import pytest

from helpers import random_kernel_pair, random_torus_vector, random_weight
from rootcert import linalg, weyl
from rootcert.rootcore import build_root_system

ORDERS = {"A1": 2, "A2": 6, "B2": 8, "G2": 12, "A3": 24, "A1xA1": 4}


@pytest.mark.parametrize("kind,order", sorted(ORDERS.items()))
def test_enumeration_orders(kind, order):
    rs = build_root_system(kind)
    elements = weyl.enumerate_weyl(rs)
    assert len(elements) == order
    assert rs.weyl_order() == order  # product-formula crosscheck


def test_elements_have_geodesic_words_and_group_axioms():
    rs = build_root_system("B2")
    elements = weyl.enumerate_weyl(rs)
    matrices = {w.matrix for w in elements}
    for w in elements:
        rebuilt = weyl.identity_element(rs)
        for i in w.word:
            rebuilt = weyl.compose(rebuilt, weyl.simple_reflection(rs, i))
        assert rebuilt.matrix == w.matrix
        assert weyl.compose(w, weyl.inverse(w)) == weyl.identity_element(rs)
        assert weyl.inverse(w).matrix in matrices


def test_action_preserves_roots_and_pairing():
    rng = random.Random(17)
    for kind in ["A2", "G2"]:
        rs = build_root_system(kind)
        roots = {b.coords for b in rs.roots}
        for w in weyl.enumerate_weyl(rs):
            assert {w.apply_root(rs, b).coords for b in rs.roots} == roots
        for _ in range(20):
            w = rng.choice(weyl.enumerate_weyl(rs))
            x = random_weight(rng, rs)
            y = random_weight(rng, rs)
            assert rs.inner_product(w.apply(x), w.apply(y)) == rs.inner_product(x, y)


def test_act_examples_and_duality():
    rs = build_root_system("A2")
    t = rs.torus([1, 0])
    ident = weyl.identity_element(rs)
    assert weyl.act(rs, ident, t).coords == t.coords
    s1 = weyl.simple_reflection(rs, 0)
    assert weyl.act(rs, s1, t).coords == (Fraction(-1), Fraction(1))
    rng = random.Random(23)
    for kind in ["A2", "B2", "G2"]:
        sys_ = build_root_system(kind)
        for _ in range(25):
            w = rng.choice(weyl.enumerate_weyl(sys_))
            chi = random_weight(rng, sys_)
            tv = random_torus_vector(rng, sys_)
            lhs = sys_.evaluate(w.apply(chi), tv)
            rhs = sys_.evaluate(chi, weyl.act(sys_, weyl.inverse(w), tv))
            assert lhs == rhs


def test_dominate_examples():
    rs = build_root_system("A2")
    dom = rs.weight([2, 1])
    got, w = weyl.dominate(rs, dom)
    assert got == dom and w.word == ()
    got, w = weyl.dominate(rs, rs.weight([-1, 1]))
    assert got.coords == (Fraction(1), Fraction(0))
    assert w.apply(rs.weight([-1, 1])) == got
    assert w.word == (0,)


def test_dominate_orbit_uniqueness_and_idempotence():
    rng = random.Random(31)
    for kind in ["A2", "B2", "G2", "A1xA1"]:
        rs = build_root_system(kind)
        elements = weyl.enumerate_weyl(rs)
        for _ in range(30):
            chi = random_weight(rng, rs)
            base, _ = weyl.dominate(rs, chi)
            again, w2 = weyl.dominate(rs, base)
            assert again == base and w2.word == ()
            w = rng.choice(elements)
            moved, _ = weyl.dominate(rs, w.apply(chi))
            assert moved == base


def test_one_step_zero_branch():
    rs = build_root_system("A2")
    chi = rs.weight([1, 0])
    t = rs.torus([1, 0])
    assert rs.evaluate(chi, t) != 0
    assert weyl.one_step(rs, chi, t) is weyl.ZERO


def test_one_step_frozen_a2_example():
    rs = build_root_system("A2")
    rho = rs.weight([1, 1])
    t = rs.torus([1, -1])
    beta = weyl.one_step(rs, rho, t)
    assert beta == rs.simple_root(0)
    assert rs.evaluate(rs.reflect(rho, beta), t) == -1


def test_one_step_requires_nonzero_arguments():
    rs = build_root_system("A2")
    with pytest.raises(ValueError):
        weyl.one_step(rs, rs.zero_weight(), rs.torus([1, 0]))
    with pytest.raises(ValueError):
        weyl.one_step(rs, rs.weight([1, 0]), rs.torus([0, 0]))


@pytest.mark.parametrize("kind", ["A2", "B2", "G2"])
def test_one_step_postcondition_and_minimality(kind):
    rs = build_root_system(kind)
    elements = weyl.enumerate_weyl(rs)
    rng = random.Random(hash(kind) % 10**6)
    for _ in range(200):
        chi, t = random_kernel_pair(rng, rs)
        beta, word = weyl.one_step_search(rs, chi, t)
        assert beta is not weyl.ZERO
        assert rs.evaluate(rs.reflect(chi, beta), t) != 0
        # exhaustive re-search oracle: no shorter witness exists
        shortest = min(
            len(w.word) for w in elements if rs.evaluate(w.apply(chi), t) != 0
        )
        assert len(word) == shortest


def test_one_step_reducible_diagnostic():
    rs = build_root_system("A1xA1")
    chi = rs.weight([1, 0])   # supported on the first factor only
    t = rs.torus([0, 1])      # supported on the second factor only
    with pytest.raises(Exception) as exc:
        weyl.one_step(rs, chi, t)
    assert "component" in str(exc.value)


def test_one_step_reducible_crossfactor_success():
    rs = build_root_system("A1xA1")
    chi = rs.weight([1, 1])
    t = rs.torus([1, -1])
    assert rs.evaluate(chi, t) == 0
    beta = weyl.one_step(rs, chi, t)
    assert rs.evaluate(rs.reflect(chi, beta), t) != 0


def test_orbit_examples():
    rs = build_root_system("A2")
    assert weyl.orbit(rs, rs.zero_weight()) == frozenset({rs.zero_weight()})
    orb = weyl.orbit(rs, rs.fundamental_weight(0))
    assert len(orb) == 3
    assert linalg.rank([w.coords for w in orb]) == 2


def test_enumeration_bound_refusal(monkeypatch):
    monkeypatch.setenv("ROOTCERT_MAX_WEYL", "2")
    rs = build_root_system("B2xA1")  # not enumerated elsewhere, so uncached
    with pytest.raises(weyl.EnumerationBoundError) as exc:
        weyl.enumerate_weyl(rs)
    assert "16" in str(exc.value)
    monkeypatch.delenv("ROOTCERT_MAX_WEYL")
    assert len(weyl.enumerate_weyl(rs)) == 16
