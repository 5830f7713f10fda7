"""SL_n realization: diagonal flows, exterior-power weight vectors, systoles.

This is the one float-mode module. The diagonal flow exp(t a) acts on a
unimodular lattice; weight vectors for the certificate weights are realized
in tensor products of exterior powers of the standard representation, where
a diagonal matrix acts on a coordinate wedge by the exact exponential of
the weight. Shortest vectors of the exterior-power lattices (the k-systoles)
witness escape to the cusp.

The shortest-vector search enumerates an integer box exhaustively; the hot
loop lives in the compiled `_svenum` kernel with `_svenum_py` as the
pure-Python fallback, selected at import.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations
from typing import Optional, Sequence

import numpy as np

from .certify import DivergenceCertificate, PerIndexWeights
from .rootcore import RootcertError, TorusVector

try:
    from . import _svenum as _kernel

    KERNEL_BACKEND = "cython"
except ImportError:  # pragma: no cover - depends on the build environment
    from . import _svenum_py as _kernel

    KERNEL_BACKEND = "python"

ENUM_LIMIT = 5e7
DET_TOLERANCE = 1e-6


class DecayError(RootcertError):
    """The tracked weight-vector norm failed its decay assertion."""


def get_kernel(backend: Optional[str] = None):
    if backend is None:
        return _kernel
    if backend == "cython":
        from . import _svenum

        return _svenum
    if backend == "python":
        from . import _svenum_py

        return _svenum_py
    raise ValueError(f"unknown kernel backend {backend!r}")


@dataclass(frozen=True)
class LatticeState:
    """Unimodular lattice basis with a flow ray, at a given flow time."""

    n: int
    basis: np.ndarray
    ray: tuple[float, ...]
    time: float = 0.0

    def __post_init__(self):
        if not 2 <= self.n <= 5:
            raise ValueError("lattice probe supports n in 2..5")
        b = np.asarray(self.basis, dtype=float)
        if b.shape != (self.n, self.n):
            raise ValueError("basis must be n x n")
        if abs(abs(float(np.linalg.det(b))) - 1.0) > DET_TOLERANCE:
            raise ValueError("basis must be unimodular (|det| = 1)")
        if len(self.ray) != self.n - 1:
            raise ValueError("ray must have n-1 evaluation coordinates")
        object.__setattr__(self, "basis", b)
        object.__setattr__(self, "ray", tuple(float(r) for r in self.ray))


def torus_element(ray: Sequence[float], time: float, n: int) -> np.ndarray:
    """diag(exp(s)) with sum(s) = 0 and s_i - s_{i+1} = time * ray_i."""
    x = [time * float(r) for r in ray]
    if len(x) != n - 1:
        raise ValueError("ray length must be n-1")
    u = [sum(x[i:]) for i in range(n)]
    shift = -sum(u) / n
    return np.diag(np.exp([ui + shift for ui in u]))


def flow(state: LatticeState, time: float) -> LatticeState:
    step = torus_element(state.ray, time - state.time, state.n)
    return LatticeState(state.n, step @ state.basis, state.ray, time)


def _subsets(n: int, k: int) -> tuple[tuple[int, ...], ...]:
    return tuple(combinations(range(n), k))


def compound_matrix(basis: np.ndarray, k: int) -> np.ndarray:
    """k-th compound: entry (S, T) is the minor det(basis[S, T])."""
    n = basis.shape[0]
    subs = _subsets(n, k)
    out = np.empty((len(subs), len(subs)))
    for a, rows in enumerate(subs):
        for b, cols in enumerate(subs):
            out[a, b] = np.linalg.det(basis[np.ix_(rows, cols)])
    return out


def shortest_vector(
    state: LatticeState, k: int, backend: Optional[str] = None
) -> tuple[float, tuple[int, ...]]:
    """Exact minimum-norm nonzero vector of the k-th exterior-power lattice.

    Returns (Euclidean norm, integer coordinates in the wedge basis, sign
    fixed so the first nonzero coordinate is positive). Refuses when the
    enumeration box outgrows the desk-scale limit.
    """
    if not 1 <= k <= state.n - 1:
        raise ValueError("exterior power k must be in 1..n-1")
    m = compound_matrix(state.basis, k)
    gram = m.T @ m
    diag = np.diag(gram)
    seed = int(np.argmin(diag))
    bound = float(diag[seed])
    r_upper = np.ascontiguousarray(np.linalg.cholesky(gram).T)
    estimate = 1.0
    for i in range(r_upper.shape[0]):
        estimate *= 2.0 * math.sqrt(bound) / float(r_upper[i, i]) + 1.0
    if estimate > ENUM_LIMIT:
        raise RootcertError(
            f"enumeration box holds about {estimate:.2e} points (> {ENUM_LIMIT:.0e}); "
            "probe at a smaller flow time"
        )
    init_z = np.zeros(r_upper.shape[0], dtype=np.int64)
    init_z[seed] = 1
    kern = get_kernel(backend)
    best_sq, z = kern.enumerate_min_sqnorm(r_upper, bound, init_z)
    lead = next((v for v in z if v != 0), 1)
    if lead < 0:
        z = tuple(-v for v in z)
    return math.sqrt(best_sq), tuple(int(v) for v in z)


# -- weight-vector realization ----------------------------------------------


def _permutation_of_word(word: Sequence[int], n: int) -> list[int]:
    perm = list(range(n))
    for ci in word:
        swap = list(range(n))
        swap[ci], swap[ci + 1] = swap[ci + 1], swap[ci]
        perm = [perm[swap[j]] for j in range(n)]
    return perm


def _wedge_weight_coords(cols: Sequence[int], n: int) -> tuple[int, ...]:
    inside = set(cols)
    return tuple(
        (1 if i in inside else 0) - (1 if i + 1 in inside else 0) for i in range(n - 1)
    )


def weight_vector_realization(
    entry: PerIndexWeights, n: int
) -> list[tuple[int, int, tuple[int, ...]]]:
    """(k, multiplicity, wedge columns) factors realizing chi' - alpha_i.

    The dominant conjugate sum(c_k chi_k) is realized as a tensor product of
    exterior powers; conjugating back by the stored Weyl word permutes the
    wedge columns. The factor weights are validated against the stored
    weight exactly.
    """
    c = [int(v) for v in entry.dominant.coords]
    if any(v < 0 for v in c):
        raise RootcertError("dominant conjugate has a negative coordinate")
    perm = _permutation_of_word(entry.w_word, n)
    sigma = [0] * n
    for j, img in enumerate(perm):
        sigma[img] = j
    factors = []
    total = [0] * (n - 1)
    for k in range(1, n):
        mult = c[k - 1]
        if mult == 0:
            continue
        cols = tuple(sorted(sigma[j] for j in range(k)))
        factors.append((k, mult, cols))
        w = _wedge_weight_coords(cols, n)
        for i in range(n - 1):
            total[i] += mult * w[i]
    if tuple(total) != tuple(int(v) for v in entry.weight_plus.coords):
        raise RootcertError("wedge realization disagrees with the certificate weight")
    return factors


def _wedge_norm(mat: np.ndarray, cols: Sequence[int]) -> float:
    sub = mat[:, list(cols)]
    k = len(cols)
    total = 0.0
    for rows in combinations(range(mat.shape[0]), k):
        total += float(np.linalg.det(sub[list(rows), :])) ** 2
    return math.sqrt(total)


def realized_norm(mat: np.ndarray, factors) -> float:
    value = 1.0
    for _, mult, cols in factors:
        value *= _wedge_norm(mat, cols) ** mult
    return value


# -- the probe ---------------------------------------------------------------


def probe_divergence(
    cert: DivergenceCertificate,
    x,
    t_max: float = 3.0,
    steps: int = 7,
    ray: Optional[Sequence[float]] = None,
    backend: Optional[str] = None,
) -> dict:
    """Decay table for the certificate weights along a ray, plus systoles.

    Tracks, for each index i, the realized weight-vector norm of
    chi' - alpha_i under the flowed lattice basis, and each k-systole. The
    tracked top index must decay monotonically past the burn-in (t >= 1)
    and end below its initial value whenever its rate is negative; a
    violation raises with the witness time.
    """
    mat = np.asarray(x, dtype=float)
    n = mat.shape[0]
    if mat.shape != (n, n):
        raise ValueError("x must be a square matrix")
    if abs(abs(float(np.linalg.det(mat))) - 1.0) > DET_TOLERANCE:
        raise ValueError("x must be unimodular")
    if cert.system.rank != n - 1 or cert.system.component_names != (f"A{n - 1}",):
        raise ValueError(
            f"certificate system {cert.system.name} does not match SL_{n}"
        )
    if ray is None:
        ray = [float(c) for c in cert.subspace_basis[0].coords]
    ray = [float(v) for v in ray]
    top_val = max(ray) if ray else 0.0
    if top_val < max(-min(ray), 0.0):
        ray = [-v for v in ray]
        top_val = max(ray)
    if top_val > 0:
        ray = [v / top_val for v in ray]
    tracked = ray.index(max(ray)) if any(v != 0 for v in ray) else 0
    rate_exact = cert.system.evaluate(
        cert.per_index[tracked].weight_plus, TorusVector(tuple(ray))
    )
    rate = float(rate_exact)

    factors = [weight_vector_realization(e, n) for e in cert.per_index]
    times = [t_max * i / (steps - 1) if steps > 1 else 0.0 for i in range(steps)]
    weight_norms: list[list[float]] = []
    systoles: list[list[float]] = []
    base = LatticeState(n, mat, tuple(ray), 0.0)
    for t in times:
        a_t = torus_element(ray, t, n)
        flowed = a_t @ mat
        weight_norms.append([realized_norm(flowed, f) for f in factors])
        state = flow(base, t)
        systoles.append(
            [shortest_vector(state, k, backend=backend)[0] for k in range(1, n)]
        )

    decay_ok = True
    witness = None
    if rate < -1e-12:
        tracked_norms = [row[tracked] for row in weight_norms]
        if not tracked_norms[-1] < tracked_norms[0]:
            decay_ok = False
            witness = {"reason": "final norm not below initial"}
        prev = None
        for t, v in zip(times, tracked_norms):
            if t < 1.0:
                continue
            if prev is not None and v > prev * (1.0 + 1e-9):
                decay_ok = False
                witness = {"reason": "norm increased past burn-in", "t": t}
                break
            prev = v
        if not decay_ok:
            raise DecayError(f"tracked weight norm failed to decay: {witness}")

    return {
        "n": n,
        "times": times,
        "weight_norms": weight_norms,
        "systoles": systoles,
        "tracked_index": tracked + 1,
        "tracked_rate": rate,
        "ray": ray,
        "decay_ok": decay_ok,
    }
