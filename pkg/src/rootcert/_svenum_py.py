"""Pure-Python twin of the compiled enumeration kernel.

Keeps the exact operation order of rootcert._svenum so both backends agree
bit for bit; selected at import time when the extension is unavailable.
"""

from __future__ import annotations

from math import ceil, floor, sqrt


def enumerate_min_sqnorm(r_upper, bound_sq, init_z):
    """Minimize ||R z||^2 over nonzero integer z, seeded with a known witness."""
    r = [[float(e) for e in row] for row in r_upper]
    dim = len(r)
    z = [0] * dim
    best = [int(v) for v in init_z]
    hi = [0] * dim
    ybuf = [0.0] * dim
    part = [0.0] * dim
    best_sq = float(bound_sq)

    i = dim - 1
    part[i] = 0.0
    y = 0.0
    for j in range(i + 1, dim):
        y += r[i][j] * z[j]
    ybuf[i] = y
    rem = best_sq - part[i]
    if rem <= 0.0:
        return best_sq, tuple(best)
    s = sqrt(rem)
    lo = ceil((-s - y) / r[i][i])
    hi[i] = floor((s - y) / r[i][i])
    z[i] = lo - 1

    while True:
        z[i] += 1
        if z[i] > hi[i]:
            i += 1
            if i == dim:
                break
            continue
        contrib = r[i][i] * z[i] + ybuf[i]
        contrib = contrib * contrib
        npart = part[i] + contrib
        if npart >= best_sq:
            continue
        if i == 0:
            if any(v != 0 for v in z):
                best_sq = npart
                best = z.copy()
            continue
        i -= 1
        part[i] = npart
        y = 0.0
        for j in range(i + 1, dim):
            y += r[i][j] * z[j]
        ybuf[i] = y
        rem = best_sq - part[i]
        if rem <= 0.0:
            z[i] = 1
            hi[i] = 0
            continue
        s = sqrt(rem)
        lo = ceil((-s - y) / r[i][i])
        hi[i] = floor((s - y) / r[i][i])
        z[i] = lo - 1

    return best_sq, tuple(best)
