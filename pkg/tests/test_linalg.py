import random
from fractions import Fraction

import pytest

from rootcert import linalg


def test_rref_and_rank():
    m = linalg.mat([[1, 2, 3], [2, 4, 6], [0, 1, 1]])
    red, pivots = linalg.rref(m)
    assert pivots == (0, 1)
    assert linalg.rank(m) == 2


def test_nullspace_orthogonal_to_rows():
    rng = random.Random(11)
    for _ in range(50):
        rows = [[Fraction(rng.randint(-5, 5), rng.randint(1, 3)) for _ in range(4)]
                for _ in range(2)]
        ns = linalg.nullspace(rows)
        assert len(ns) == 4 - linalg.rank(rows)
        for v in ns:
            for row in rows:
                assert linalg.dot(row, v) == 0


def test_nullspace_deterministic_and_primitive():
    rows = [[Fraction(1), Fraction(2), Fraction(3)]]
    a = linalg.nullspace(rows)
    b = linalg.nullspace([list(r) for r in rows])
    assert a == b
    for v in a:
        assert all(e.denominator == 1 for e in v)
        lead = next(e for e in v if e != 0)
        assert lead > 0


def test_inverse_solve_det():
    m = linalg.mat([[2, -1], [-1, 2]])
    inv = linalg.inverse(m)
    assert linalg.mat_mul(m, inv) == linalg.identity(2)
    x = linalg.solve(m, [1, 0])
    assert linalg.mat_vec(m, x) == (Fraction(1), Fraction(0))
    assert linalg.det(m) == 3
    with pytest.raises(ValueError):
        linalg.inverse([[1, 1], [1, 1]])


def test_leading_principal_minors():
    m = linalg.mat([[2, -1], [-1, 2]])
    assert linalg.leading_principal_minors(m) == (Fraction(2), Fraction(3))
