import itertools
import random
from fractions import Fraction

import pytest

from rootcert import repweights as rw
from rootcert import weyl
from rootcert.rootcore import build_root_system


def box_saturation_oracle(system, highest):
    """Independent route: enumerate dominant mu <= highest by a bounded
    search over non-negative root-lattice differences, then take orbits."""
    rank = system.rank
    alphas = [system.weight_of(system.simple_root(i)) for i in range(rank)]
    lowest, _ = weyl.dominate(system, -highest)
    # highest - w0(highest) bounds the simple-root coefficients of the drop
    span = system.to_simple(highest - (-lowest))
    bounds = [int(c) for c in span]
    weights = set()
    for ns in itertools.product(*(range(b + 1) for b in bounds)):
        mu = highest
        for n, alpha in zip(ns, alphas):
            mu = mu - n * alpha
        if mu.is_dominant():
            weights |= weyl.orbit(system, mu)
    return weights


def test_expansion_constants_frozen():
    assert rw.fundamental_expansion_constants(build_root_system("A2")) == (
        Fraction(1, 3), Fraction(1, 3)
    )
    assert rw.fundamental_expansion_constants(build_root_system("A1")) == (Fraction(1, 2),)


@pytest.mark.parametrize("kind", ["A1", "A2", "A3", "B2", "C3", "G2", "A2xA1"])
def test_expansion_constants_reconstruct(kind):
    rs = build_root_system(kind)
    d = rw.fundamental_expansion_constants(rs)
    for i in range(rs.rank):
        assert d[i] > 0
        gamma = [Fraction(0)] * rs.rank
        for beta in rs.positive_roots:
            if beta >= rs.simple_root(i):
                gamma = [a + b for a, b in zip(gamma, beta.coords)]
        chi_simple = rs.to_simple(rs.fundamental_weight(i))
        assert tuple(d[i] * c for c in gamma) == tuple(chi_simple)


def test_saturate_a2_adjoint_frozen():
    rs = build_root_system("A2")
    spec = rw.saturate(rs, rs.weight([1, 1]))
    got = {tuple(map(int, w.coords)) for w in spec.weight_set}
    assert got == {(1, 1), (-1, 2), (2, -1), (0, 0), (-2, 1), (1, -2), (-1, -1)}
    assert len(got) == 7
    assert spec.highest_multiplicity_one


def test_saturate_rank_one_and_zero():
    rs1 = build_root_system("A1")
    spec = rw.saturate(rs1, rs1.weight([2]))
    assert {int(w.coords[0]) for w in spec.weight_set} == {-2, 0, 2}
    rs = build_root_system("A2")
    assert rw.saturate(rs, rs.zero_weight()).weight_set == frozenset({rs.zero_weight()})


@pytest.mark.parametrize(
    "kind,coords",
    [("A2", (1, 1)), ("A2", (2, 0)), ("B2", (1, 1)), ("B2", (0, 2)), ("G2", (1, 0))],
)
def test_saturate_matches_box_oracle(kind, coords):
    rs = build_root_system(kind)
    highest = rs.weight(coords)
    assert rw.saturate(rs, highest).weight_set == frozenset(
        box_saturation_oracle(rs, highest)
    )


def test_saturate_w_stable_and_extreme():
    for kind in ["A2", "B2"]:
        rs = build_root_system(kind)
        highest = rs.weight([1, 1])
        spec = rw.saturate(rs, highest)
        weights = spec.weight_set
        for w in weyl.enumerate_weyl(rs):
            assert frozenset(w.apply(mu) for mu in weights) == weights
            extreme = w.apply(highest)
            assert extreme in weights
            # extreme weights are not midpoints of two distinct weights
            for a in weights:
                for b in weights:
                    if a != b:
                        mid = Fraction(1, 2) * (a + b)
                        assert mid != extreme


def test_saturate_requires_dominant_integral():
    rs = build_root_system("A2")
    with pytest.raises(ValueError):
        rw.saturate(rs, rs.weight([-1, 1]))
    with pytest.raises(ValueError):
        rw.saturate(rs, rs.weight([Fraction(1, 2), 0]))


def test_nonweight_check_examples():
    rs = build_root_system("A2")
    rho = rs.weight([1, 1])
    ident = weyl.identity_element(rs)
    assert rw.nonweight_check(rs, rho, ident, rs.simple_root(0)) is rw.Verdict.GUARANTEED_NOT_WEIGHT
    # and indeed rho + alpha_1 is not in the saturation
    shifted = rho + rs.weight_of(rs.simple_root(0))
    assert shifted not in rw.saturate(rs, rho).weight_set
    theta = rs.highest_root(0)
    assert rw.nonweight_check(rs, rho, ident, -theta) is rw.Verdict.UNKNOWN


@pytest.mark.parametrize("kind", ["A2", "B2", "G2"])
def test_nonweight_exhaustive_consistency(kind):
    rs = build_root_system(kind)
    for scale in (1, 2):
        chi = rs.weight([scale] * rs.rank)
        sat = rw.saturate(rs, chi).weight_set
        for w in weyl.enumerate_weyl(rs):
            moved = w.apply(chi)
            for beta in rs.roots:
                if moved + rs.weight_of(beta) in sat:
                    assert rs.pairing(moved, beta) < 0
                    assert rw.nonweight_check(rs, chi, w, beta) is rw.Verdict.UNKNOWN


def test_negated_spec():
    rs = build_root_system("A2")
    spec = rw.saturate(rs, rs.weight([1, 1]))
    neg = spec.negated()
    assert neg.highest_weight == -spec.highest_weight
    assert neg.weight_set == frozenset(-mu for mu in spec.weight_set)


def test_qweight_action_shift():
    rs = build_root_system("A2")
    lam = rs.fundamental_weight(1)
    assert rw.qweight_action_shift(rs, None, lam) == lam
    beta = rs.simple_root(0)
    shifted = rw.qweight_action_shift(rs, beta, lam)
    assert shifted == lam + rs.weight_of(beta)
    assert rw.qweight_action_shift(rs, -beta, shifted) == lam
