import random
from fractions import Fraction

import pytest

from helpers import random_subspace
from rootcert import linalg, torus, weyl
from rootcert.rootcore import RootcertError, build_root_system


def coweight_line_datum():
    # split part = the alpha_1 + alpha_2 coweight line of A2, eval coords (1,1)
    return torus.SplitDatum(build_root_system("A2"), [[1, 1]])


def test_split_datum_direct_sum_and_orthogonality():
    d = coweight_line_datum()
    assert d.rank_q == 1
    assert [v.coords for v in d.aniso_basis] == [(Fraction(1), Fraction(-1))]
    stacked = [v.coords for v in d.split_basis] + [v.coords for v in d.aniso_basis]
    assert linalg.rank(stacked) == 2
    for s in d.split_basis:
        for a in d.aniso_basis:
            g = linalg.mat_vec(d.metric, a.coords)
            assert linalg.dot(s.coords, g) == 0


def test_restricted_system_nonreduced_reduction():
    d = coweight_line_datum()
    assert d.qsys is not None and d.qsys.name == "A1"
    assert d.dropped_multiples  # the doubled restricted root was dropped


def test_fully_split_keeps_ambient_indexing():
    for kind in ["A2", "B2", "G2", "A3", "A1xA1", "A2xA1"]:
        rs = build_root_system(kind)
        d = torus.fully_split(rs)
        assert d.qsys.cartan == rs.cartan
        for i in range(rs.rank):
            t = rs.torus([1 if k == i else 0 for k in range(rs.rank)])
            assert d.q_eval_coords(t).coords == t.coords


def test_decompose_examples():
    rs = build_root_system("A2")
    d = coweight_line_datum()
    inside = torus.subspace(rs, [[1, 1]])
    ani, spl = torus.decompose(inside, d)
    assert ani is None and spl is inside
    t0 = torus.subspace(rs, [[1, -1]])
    ani, spl = torus.decompose(t0, d)
    assert spl is None and ani is t0
    full = torus.subspace(rs, [[1, 0], [0, 1]])
    ani, spl = torus.decompose(full, d)
    assert ani.dim == 1 and spl.dim == 1
    assert ani.basis[0].coords == (Fraction(1), Fraction(-1))
    assert spl.basis[0].coords == (Fraction(1), Fraction(1))


def test_decompose_recombines_and_is_orthogonal():
    rng = random.Random(41)
    for kind in ["A2", "B2", "A3"]:
        rs = build_root_system(kind)
        for _ in range(20):
            sdim = rng.randint(1, rs.rank)
            d = torus.SplitDatum(rs, [v.coords for v in random_subspace(rng, rs, sdim).basis])
            a = random_subspace(rng, rs, rng.randint(1, rs.rank))
            ani, spl = torus.decompose(a, d)
            rows = []
            if ani is not None:
                rows += [v.coords for v in ani.basis]
            if spl is not None:
                rows += [v.coords for v in spl.basis]
            assert len(rows) == a.dim
            combined = rows + [v.coords for v in a.basis]
            assert linalg.rank(combined) == a.dim


def test_q_character_examples():
    rs = build_root_system("A2")
    dfull = torus.fully_split(rs)
    chi = torus.q_character_vanishing_on(torus.subspace(rs, [[1, 1]]), dfull)
    assert chi.coords == (Fraction(1), Fraction(-1))
    r2 = build_root_system("A1xA1")
    chi2 = torus.q_character_vanishing_on(torus.subspace(r2, [[1, 1]]), torus.fully_split(r2))
    assert chi2.coords == (Fraction(1), Fraction(-1))
    # trivial spl with rank 1: any nonzero character supported on the split part
    d = coweight_line_datum()
    chi3 = torus.q_character_vanishing_on(None, d)
    assert not chi3.is_zero()


def test_q_character_postcondition_property():
    rng = random.Random(43)
    for kind in ["A2", "B2", "A3"]:
        rs = build_root_system(kind)
        for _ in range(15):
            sdim = rng.randint(1, rs.rank)
            d = torus.SplitDatum(rs, [v.coords for v in random_subspace(rng, rs, sdim).basis])
            k = rng.randint(0, sdim - 1)
            spl = None
            if k > 0:
                rows = [d.split_basis[i].coords for i in range(k)]
                spl = torus.subspace(rs, rows)
            chi = torus.q_character_vanishing_on(spl, d)
            assert not chi.is_zero()
            if spl is not None:
                for v in spl.basis:
                    assert rs.evaluate(chi, v) == 0
            for v in d.aniso_basis:
                assert rs.evaluate(chi, v) == 0


def test_q_character_requires_room():
    d = coweight_line_datum()
    rs = d.ambient
    with pytest.raises(RootcertError):
        torus.q_character_vanishing_on(torus.subspace(rs, [[1, 1]]), d)


def test_reflection_element_matches_direct_reflection():
    for kind in ["A2", "B2", "G2"]:
        rs = build_root_system(kind)
        for beta in rs.roots:
            el = torus.reflection_element(rs, beta)
            for chi in [rs.fundamental_weight(i) for i in range(rs.rank)]:
                assert el.apply(chi) == rs.reflect(chi, beta)


def test_make_almost_split_trivial_and_one_step_cases():
    rs = build_root_system("A2")
    d = coweight_line_datum()
    already = torus.subspace(rs, [[1, 1]])
    w, image, trace = torus.make_almost_split(already, d)
    assert w.word == () and trace == [] and image is already
    t0 = torus.subspace(rs, [[1, -1]])
    w, image, trace = torus.make_almost_split(t0, d)
    assert len(trace) == 1
    assert trace[0]["new_split_dim"] == 1
    ani, _ = torus.decompose(image, d)
    assert ani is None


def test_make_almost_split_dimension_precondition():
    d = coweight_line_datum()
    full = torus.subspace(d.ambient, [[1, 0], [0, 1]])
    with pytest.raises(RootcertError):
        torus.make_almost_split(full, d)


def test_make_almost_split_randomized_monotone():
    rng = random.Random(47)
    for kind in ["A2", "B2", "A3"]:
        rs = build_root_system(kind)
        for _ in range(15):
            sdim = rng.randint(1, rs.rank)
            d = torus.SplitDatum(rs, [v.coords for v in random_subspace(rng, rs, sdim).basis])
            a = random_subspace(rng, rs, rng.randint(1, sdim))
            w, image, trace = torus.make_almost_split(a, d)
            assert len(trace) <= a.dim
            dims = [st["new_split_dim"] for st in trace]
            assert dims == sorted(dims) and len(set(dims)) == len(dims)
            ani, _ = torus.decompose(image, d)
            assert ani is None
            # image spans exactly the conjugated subspace
            assert linalg.rank(
                [weyl.act(rs, w, v).coords for v in a.basis]
                + [u.coords for u in image.basis]
            ) == a.dim


def test_float_subspace_snap():
    rs = build_root_system("A2")
    sub = torus.subspace(rs, [[0.5, -0.25]])
    assert not sub.exact
    snapped = torus.rationalize(rs, sub)
    assert snapped.exact
    assert snapped.basis[0].coords == (Fraction(1, 2), Fraction(-1, 4))


def test_snap_rational_prefers_small_denominators():
    assert torus.snap_rational(0.5) == Fraction(1, 2)
    assert torus.snap_rational(1 / 3) == Fraction(1, 3)
    got = torus.snap_rational(2**0.5)
    assert abs(got - 2**0.5) <= 1e-9
    assert got.denominator < 10**7


def test_restricted_characters_vanish_on_aniso_part():
    # extension-by-zero surrogate: restricted fundamental weights kill t_0
    for split_rows in [[[1, 1]], [[2, 1]], [[1, 3]]]:
        d = torus.SplitDatum(build_root_system("A2"), split_rows)
        if d.qsys is None:
            continue
        for rep in d.q_simple_reps:
            for v in d.aniso_basis:
                g = linalg.mat_vec(d.metric, rep.coords)
                assert linalg.dot(g, v.coords) == 0


def test_subspace_validation():
    rs = build_root_system("A2")
    with pytest.raises(ValueError):
        torus.subspace(rs, [])
    with pytest.raises(ValueError):
        torus.subspace(rs, [[1, 0], [2, 0]])
