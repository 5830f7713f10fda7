"""Shared randomized-instance generators for the test suite.

All randomness is drawn from caller-provided random.Random instances so
every test run is reproducible from its seed.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np

from rootcert import linalg, torus
from rootcert.rootcore import RootSystem, TorusVector, Weight


def random_fraction(rng, lo=-9, hi=9, max_den=5) -> Fraction:
    return Fraction(rng.randint(lo, hi), rng.randint(1, max_den))


def random_weight(rng, system: RootSystem, nonzero=True) -> Weight:
    while True:
        w = system.weight([random_fraction(rng) for _ in range(system.rank)])
        if not nonzero or not w.is_zero():
            return w


def random_torus_vector(rng, system: RootSystem, nonzero=True) -> TorusVector:
    while True:
        t = system.torus([random_fraction(rng) for _ in range(system.rank)])
        if not nonzero or not t.is_zero():
            return t


def random_kernel_pair(rng, system: RootSystem):
    """(chi, t) with chi != 0, t != 0 and chi(t) = 0 exactly."""
    while True:
        chi = random_weight(rng, system)
        d = system.to_simple(chi)
        kernel = linalg.nullspace([d])
        if not kernel:
            continue
        coeffs = [random_fraction(rng) for _ in kernel]
        t = [sum((c * v[k] for c, v in zip(coeffs, kernel)), Fraction(0))
             for k in range(system.rank)]
        if any(e != 0 for e in t):
            return chi, system.torus(t)


def random_subspace(rng, system: RootSystem, dim: int) -> torus.SubtorusSubspace:
    """Random rational subspace of the given dimension."""
    while True:
        rows = [[random_fraction(rng) for _ in range(system.rank)] for _ in range(dim)]
        if linalg.rank(rows) == dim:
            return torus.subspace(system, rows)


def random_admissible_subspace(rng, system: RootSystem, datum, dim: int):
    """Random subspace that build_certificate accepts (fully split data)."""
    from rootcert import certify
    from rootcert.rootcore import RootcertError

    for _ in range(100):
        sub = random_subspace(rng, system, dim)
        try:
            return sub, certify.build_certificate(sub, datum)
        except RootcertError:
            continue
    raise AssertionError("could not sample an admissible subspace")


def random_unimodular(rng, n: int, entry_bound: int = 3) -> np.ndarray:
    """Integer matrix with determinant +-1, entries kept small."""
    while True:
        m = np.eye(n)
        for _ in range(3 * n):
            i, j = rng.randrange(n), rng.randrange(n)
            if i != j:
                m[i] += rng.randint(-1, 1) * m[j]
        if np.max(np.abs(m)) <= entry_bound and abs(abs(np.linalg.det(m)) - 1) < 1e-9:
            return m
