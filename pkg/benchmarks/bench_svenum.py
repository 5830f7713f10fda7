"""Benchmark the compiled shortest-vector kernel against the Python fallback.

Runs the same enumeration instances through rootcert._svenum (Cython) and
rootcert._svenum_py, checks they agree, and prints a timing table.

Usage: python benchmarks/bench_svenum.py [--repeat 5]
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from rootcert import slprobe


def _state(n, t, seed, shears, spread):
    rng = np.random.default_rng(seed)
    ray = tuple(sorted(rng.uniform(-1, 1, size=n - 1), reverse=True))
    basis = np.eye(n)
    for _ in range(shears):  # random unimodular shear, then rescale to det 1
        i, j = rng.integers(0, n, size=2)
        if i != j:
            basis[i] += rng.integers(-spread, spread + 1) * basis[j]
    basis /= abs(np.linalg.det(basis)) ** (1.0 / n)
    return slprobe.flow(slprobe.LatticeState(n, basis, ray, 0.0), t)


def instances():
    # light cases are setup-bound; the sheared long-time cases exercise the
    # enumeration walk itself
    cases = [
        ("light", 3, 2.0, 1, 6, 2),
        ("light", 4, 2.0, 2, 6, 2),
        ("light", 5, 1.5, 3, 6, 2),
        ("heavy", 3, 5.0, 7, 6, 2),
        ("heavy", 4, 5.0, 3, 12, 4),
        ("heavy", 4, 4.2, 7, 6, 2),
    ]
    out = []
    for tag, n, t, seed, shears, spread in cases:
        state = _state(n, t, seed, shears, spread)
        for k in range(1, n):
            try:
                slprobe.shortest_vector(state, k)
            except Exception:
                continue  # box over the desk-scale limit; skip
            out.append((f"{tag} n={n} t={t} k={k}", state, k))
    return out


def run(backend: str, state, k, repeat: int) -> tuple[float, tuple]:
    best = float("inf")
    result = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        result = slprobe.shortest_vector(state, k, backend=backend)
        best = min(best, time.perf_counter() - t0)
    return best, result


def main() -> None:
    parser = argparse.ArgumentParser()
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args()

    try:
        slprobe.get_kernel("cython")
        backends = ["cython", "python"]
    except ImportError:
        print("compiled kernel unavailable; timing the fallback only")
        backends = ["python"]

    print(f"default backend: {slprobe.KERNEL_BACKEND}")
    print(f"{'instance':<18}" + "".join(f"{b:>12}" for b in backends) + f"{'speedup':>10}")
    for label, state, k in instances():
        times = {}
        results = {}
        for b in backends:
            times[b], results[b] = run(b, state, k, args.repeat)
        if len(backends) == 2:
            assert results["cython"] == results["python"], f"backend mismatch on {label}"
            speedup = times["python"] / times["cython"]
            cells = f"{times['cython'] * 1e3:>10.3f}ms{times['python'] * 1e3:>10.3f}ms{speedup:>9.1f}x"
        else:
            cells = f"{times['python'] * 1e3:>10.3f}ms"
        print(f"{label:<22}{cells}")


if __name__ == "__main__":
    main()
