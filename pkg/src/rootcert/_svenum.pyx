# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Compiled Fincke-Pohst enumeration kernel for shortest lattice vectors.

Mirrors rootcert._svenum_py exactly (same iteration order, same float
operation order), so both backends return identical results; this one just
runs the hot integer-box walk in C.
"""

import numpy as np

cimport numpy as cnp
from libc.math cimport ceil, floor, sqrt

cnp.import_array()


def enumerate_min_sqnorm(double[:, ::1] r_upper, double bound_sq, init_z):
    """Minimize ||R z||^2 over nonzero integer z, seeded with a known witness.

    `r_upper` is the upper-triangular Cholesky factor of the Gram matrix,
    `bound_sq` the squared norm of the seed witness `init_z`. Returns
    (best_sq, best_z tuple). Exploration uses strict improvement, so ties
    keep the earliest vector in ascending coordinate order.
    """
    cdef int dim = r_upper.shape[0]
    cdef cnp.ndarray[cnp.int64_t, ndim=1] z = np.zeros(dim, dtype=np.int64)
    cdef cnp.ndarray[cnp.int64_t, ndim=1] best = np.asarray(init_z, dtype=np.int64).copy()
    cdef cnp.ndarray[cnp.int64_t, ndim=1] hi = np.zeros(dim, dtype=np.int64)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] ybuf = np.zeros(dim, dtype=np.float64)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] part = np.zeros(dim, dtype=np.float64)
    cdef double best_sq = bound_sq
    cdef double y, rem, s, contrib, npart
    cdef int i, j, nonzero
    cdef cnp.int64_t lo

    i = dim - 1
    part[i] = 0.0
    y = 0.0
    for j in range(i + 1, dim):
        y += r_upper[i, j] * z[j]
    ybuf[i] = y
    rem = best_sq - part[i]
    if rem <= 0.0:
        return best_sq, tuple(best.tolist())
    s = sqrt(rem)
    lo = <cnp.int64_t> ceil((-s - y) / r_upper[i, i])
    hi[i] = <cnp.int64_t> floor((s - y) / r_upper[i, i])
    z[i] = lo - 1

    while True:
        z[i] += 1
        if z[i] > hi[i]:
            i += 1
            if i == dim:
                break
            continue
        contrib = r_upper[i, i] * z[i] + ybuf[i]
        contrib = contrib * contrib
        npart = part[i] + contrib
        if npart >= best_sq:
            continue
        if i == 0:
            nonzero = 0
            for j in range(dim):
                if z[j] != 0:
                    nonzero = 1
                    break
            if nonzero:
                best_sq = npart
                for j in range(dim):
                    best[j] = z[j]
            continue
        i -= 1
        part[i] = npart
        y = 0.0
        for j in range(i + 1, dim):
            y += r_upper[i, j] * z[j]
        ybuf[i] = y
        rem = best_sq - part[i]
        if rem <= 0.0:
            z[i] = 1
            hi[i] = 0
            continue
        s = sqrt(rem)
        lo = <cnp.int64_t> ceil((-s - y) / r_upper[i, i])
        hi[i] = <cnp.int64_t> floor((s - y) / r_upper[i, i])
        z[i] = lo - 1

    return best_sq, tuple(best.tolist())
