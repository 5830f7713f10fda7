import math
import random
from fractions import Fraction

import pytest

from rootcert import diophantine as dio


def test_frozen_examples():
    r = dio.dirichlet([Fraction(1, 3)], 4)
    assert (r.q, r.p, r.errors) == (3, (1,), (Fraction(0),))
    r = dio.dirichlet([5, -2, 7], 3)
    assert r.q == 1 and r.p == (5, -2, 7) and r.max_error == 0
    r = dio.dirichlet([math.sqrt(2) - 1], 5)
    assert r.q == 2 and r.p == (1,)
    assert abs(r.errors[0] - 0.1715728752538097) < 1e-12


def test_preconditions():
    with pytest.raises(ValueError):
        dio.dirichlet([Fraction(1, 2)], 1)
    with pytest.raises(ValueError):
        dio.dirichlet([], 3)


def test_dirichlet_bounds_random():
    rng = random.Random(97)
    for _ in range(300):
        d = rng.randint(1, 3)
        Q = rng.randint(2, 12)
        if rng.random() < 0.5:
            x = [Fraction(rng.randint(-40, 40), rng.randint(1, 40)) for _ in range(d)]
            bound = Fraction(1, Q)
        else:
            x = [rng.uniform(-5, 5) for _ in range(d)]
            bound = 1.0 / Q
        r = dio.dirichlet(x, Q)
        assert 1 <= r.q < Q**d
        assert all(e <= bound for e in r.errors)
        # determinism: the returned q is the smallest admissible one
        for q in range(1, r.q):
            errs = [abs(q * v - round(q * v)) for v in x]
            assert not all(e <= bound for e in errs)


def test_rationalize_frozen_examples():
    p, q = dio.rationalize_character([1, 1], 5, 2)
    assert (p, q) == ((1, 1), 1)
    p, q = dio.rationalize_character([Fraction(1, 3), Fraction(2, 3)], 3, 2)
    assert (p, q) == ((1, 2), 3)


def test_rationalize_postconditions_random():
    rng = random.Random(101)
    for _ in range(200):
        r = rng.randint(1, 4)
        R = Fraction(rng.randint(1, 12), rng.randint(1, 3))
        b = [Fraction(rng.randint(-9, 9), rng.randint(1, 7)) for _ in range(r)]
        if all(v == 0 for v in b):
            continue
        p, q = dio.rationalize_character(b, R, r)
        bound = 1 / (2 * R * r)
        assert any(pi != 0 for pi in p)
        for bi, pi in zip(b, p):
            assert abs(q * bi - pi) < bound
            if bi != 0:
                assert pi != 0


def test_rationalize_preconditions():
    with pytest.raises(ValueError):
        dio.rationalize_character([0, 0], 3, 2)
    with pytest.raises(ValueError):
        dio.rationalize_character([1], 0, 1)


def test_exact_integerization():
    p, q = dio.exact_integerization([Fraction(1, 3), Fraction(2, 3)])
    assert (p, q) == ((1, 2), 3)
    p, q = dio.exact_integerization([Fraction(3, 4), Fraction(5, 6)])
    assert q == 12 and p == (9, 10)
