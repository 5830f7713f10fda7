"""Weight-level model of highest-weight representations.

Representations are carried only by their weight data: the saturated
weight set of a dominant highest weight, plus the fact that the extreme
weight spaces are one dimensional. Lowest-weight data is modeled by
negating a highest-weight set.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction

from .rootcore import RootcertError, RootSystem, RootVector, Weight
from .weyl import WeylElement

MAX_SATURATION = 200_000


class Verdict(enum.Enum):
    GUARANTEED_NOT_WEIGHT = "guaranteed_not_weight"
    UNKNOWN = "unknown"


@dataclass(frozen=True)
class WeightRepSpec:
    """Saturated weight set of a highest-weight representation."""

    highest_weight: Weight
    weight_set: frozenset[Weight]
    highest_multiplicity_one: bool = True

    def __contains__(self, mu: Weight) -> bool:
        return mu in self.weight_set

    def negated(self) -> "WeightRepSpec":
        """Weight data of the lowest-weight counterpart."""
        return WeightRepSpec(
            -self.highest_weight,
            frozenset(-mu for mu in self.weight_set),
            self.highest_multiplicity_one,
        )


def fundamental_expansion_constants(system: RootSystem) -> tuple[Fraction, ...]:
    """d_i > 0 with chi_i = d_i * sum of the positive roots >= alpha_i.

    Also checks the two facts that make this work: the root sum gamma_i
    pairs to zero with every other simple root of its component, and the
    reconstruction is exact.
    """
    out = []
    for i in range(system.rank):
        alpha = system.simple_root(i)
        gamma = RootVector(tuple(Fraction(0) for _ in range(system.rank)))
        for beta in system.positive_roots:
            if beta >= alpha:
                gamma = gamma + beta
        if gamma.is_zero():  # pragma: no cover
            raise RootcertError("empty root sum above a simple root")
        comp = system.components[system.component_of_index(i)]
        for j in comp:
            expected = 0 if j != i else None
            val = system.pairing(gamma, system.simple_root(j))
            if expected is not None and val != expected:
                raise RootcertError(
                    f"root sum above alpha_{i + 1} pairs nontrivially with alpha_{j + 1}"
                )
        chi_simple = system.to_simple(system.fundamental_weight(i))
        k = next(k for k, c in enumerate(gamma.coords) if c != 0)
        d = chi_simple[k] / gamma.coords[k]
        if d <= 0 or tuple(d * c for c in gamma.coords) != tuple(chi_simple):
            raise RootcertError(f"chi_{i + 1} is not a positive multiple of its root sum")
        out.append(d)
    return tuple(out)


_saturation_cache: dict[tuple, WeightRepSpec] = {}


def saturate(system: RootSystem, highest: Weight) -> WeightRepSpec:
    """All weights of the highest-weight representation with this extreme weight.

    Works downward by height: mu - alpha_i is a weight iff the alpha_i-string
    through mu extends below, i.e. (climb above mu) + <mu, alpha_i> >= 1.
    The result is W-stable and saturated by construction.
    """
    key = (system.cartan, highest.coords)
    cached = _saturation_cache.get(key)
    if cached is not None:
        return cached
    if not highest.is_dominant():
        raise ValueError("saturate requires a dominant highest weight")
    if any(c.denominator != 1 for c in highest.coords):
        raise ValueError("saturate requires integral coordinates")
    alphas = [system.weight_of(system.simple_root(i)) for i in range(system.rank)]
    weights = {highest}
    level = [highest]
    while level:
        nxt = []
        for mu in level:
            for i, alpha in enumerate(alphas):
                up = 0
                probe = mu + alpha
                while probe in weights:
                    up += 1
                    probe = probe + alpha
                if up + mu.coords[i] >= 1:
                    down = mu - alpha
                    if down not in weights:
                        weights.add(down)
                        nxt.append(down)
                        if len(weights) > MAX_SATURATION:
                            raise RootcertError(
                                f"saturation exceeds {MAX_SATURATION} weights; refusing"
                            )
        level = nxt
    spec = WeightRepSpec(highest, frozenset(weights))
    _saturation_cache[key] = spec
    return spec


def nonweight_check(
    system: RootSystem, chi: Weight, w: WeylElement, beta: RootVector
) -> Verdict:
    """Certify that w(chi) + beta is not a weight of the rep with highest weight chi.

    A shifted extreme weight w(chi) + beta can only be a weight when
    <w(chi), beta> < 0, so a non-negative pairing is a guarantee; a negative
    one decides nothing.
    """
    if not chi.is_dominant():
        raise ValueError("nonweight_check expects a dominant highest weight")
    if not system.is_root(beta):
        raise ValueError("nonweight_check expects a root")
    if system.pairing(w.apply(chi), beta) >= 0:
        return Verdict.GUARANTEED_NOT_WEIGHT
    return Verdict.UNKNOWN


def qweight_action_shift(system: RootSystem, beta, lam: Weight) -> Weight:
    """Weight reached from lam by the root space of beta (beta = None for 0)."""
    if beta is None:
        return lam
    return lam + system.weight_of(beta)
