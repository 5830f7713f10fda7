"""Simultaneous rational approximation and character rationalization.

The approximation search is an exhaustive scan over multipliers, which at
desk scale (dimension <= 6, modest bounds) is exact and simple; for large
ranks a lattice-reduction approach would replace it.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import floor, lcm

from .rootcore import RootcertError


@dataclass(frozen=True)
class DirichletResult:
    """q, p with 1 <= q < Q^d and |q x_i - p_i| <= 1/Q for every i."""

    q: int
    p: tuple[int, ...]
    Q: int
    errors: tuple

    @property
    def max_error(self):
        return max(self.errors) if self.errors else 0


def _nearest_int(v) -> int:
    # round half away from zero, exactly for Fractions
    if isinstance(v, Fraction):
        f = floor(v)
        return f if v - f < Fraction(1, 2) else f + 1
    return int(floor(v + 0.5))


def dirichlet(x, Q: int) -> DirichletResult:
    """Smallest multiplier meeting the simultaneous approximation bound.

    Scans q = 1 .. Q^d - 1 and returns the first q whose nearest-integer
    vector p satisfies |q x_i - p_i| <= 1/Q; such q exists for every real
    input. Exact Fractions stay exact; floats are compared in float
    arithmetic.
    """
    if Q < 2:
        raise ValueError("dirichlet requires Q >= 2")
    x = tuple(x)
    d = len(x)
    if d < 1:
        raise ValueError("dirichlet requires a nonempty vector")
    exact = all(isinstance(v, (int, Fraction)) for v in x)
    xs = tuple(Fraction(v) for v in x) if exact else tuple(float(v) for v in x)
    bound = Fraction(1, Q) if exact else 1.0 / Q
    for q in range(1, Q**d):
        p = tuple(_nearest_int(q * v) for v in xs)
        errors = tuple(abs(q * v - pi) for v, pi in zip(xs, p))
        if all(e <= bound for e in errors):
            return DirichletResult(q, p, Q, errors)
    raise RootcertError(  # pragma: no cover
        "dirichlet scan exhausted; the approximation theorem guarantees a hit"
    )


def rationalize_character(b, R, r: int, max_retries: int = 64) -> tuple[tuple[int, ...], int]:
    """Integer coordinates p and multiplier q with |q b_i - p_i| < 1/(2 R r).

    Retries with a doubled bound whenever some nonzero coordinate rounds to
    zero (or everything rounds to zero), so p_i != 0 wherever b_i != 0.
    """
    b = tuple(b)
    if all(v == 0 for v in b):
        raise ValueError("rationalize_character requires a nonzero vector")
    if R <= 0:
        raise ValueError("rationalize_character requires R > 0")
    Q = int(floor(2 * Fraction(R) * r)) + 1
    Q = max(Q, 2)
    for _ in range(max_retries):
        result = dirichlet(b, Q)
        ok = all((pi != 0) == (vi != 0) or vi == 0 for pi, vi in zip(result.p, b))
        if ok and any(pi != 0 for pi in result.p):
            return result.p, result.q
        Q *= 2
    raise RootcertError(
        "rationalize_character could not avoid zero coordinates after retries"
    )


def exact_integerization(b) -> tuple[tuple[int, ...], int]:
    """Zero-error rationalization: p = q b with q the lcm of denominators."""
    fracs = [Fraction(v) for v in b]
    q = lcm(*(f.denominator for f in fracs)) if fracs else 1
    return tuple(int(f * q) for f in fracs), q
