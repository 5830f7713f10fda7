"""Weyl group machinery: enumeration, orbits, dominance, one-step search.

Elements act on weights through exact matrices in fundamental coordinates
and, contragrediently, on torus vectors in evaluation coordinates. The
one-step search realizes the constructive proof that some reflection (or
none) makes a character non-vanishing on a given torus vector: it finds a
minimal-length word w = s_{l_1} ... s_{l_k} with w(chi)(t) != 0 and returns
beta = s_{l_1} ... s_{l_{k-1}}(alpha_{l_k}), so that s_beta(chi)(t) != 0.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from . import linalg
from .rootcore import RootcertError, RootSystem, RootVector, TorusVector, Weight

DEFAULT_RANK_BOUND = 6


class EnumerationBoundError(RootcertError):
    """Raised instead of enumerating a Weyl group beyond the rank bound."""


def _rank_bound() -> int:
    return int(os.environ.get("ROOTCERT_MAX_WEYL", str(DEFAULT_RANK_BOUND)))


def _check_rank(system: RootSystem) -> None:
    bound = _rank_bound()
    if system.rank > bound:
        raise EnumerationBoundError(
            f"rank {system.rank} exceeds the enumeration bound {bound} "
            f"(estimated group order {system.weyl_order()}); "
            "raise ROOTCERT_MAX_WEYL to override"
        )


@dataclass(frozen=True)
class WeylElement:
    """Group element with a geodesic word and its weight-coordinate matrix.

    `word` lists simple-reflection indices, applied right to left:
    word (i1, ..., ik) is the operator s_{i1} o ... o s_{ik}. Equality and
    hashing use only the matrix, so differently factored words compare equal.
    """

    word: tuple[int, ...]
    matrix: linalg.Mat

    def __eq__(self, other) -> bool:
        return isinstance(other, WeylElement) and self.matrix == other.matrix

    def __hash__(self) -> int:
        return hash(self.matrix)

    def __len__(self) -> int:
        return len(self.word)

    def apply(self, chi: Weight) -> Weight:
        return Weight(linalg.vec_mat(chi.coords, self.matrix))

    def apply_root(self, system: RootSystem, beta: RootVector) -> RootVector:
        image = self.apply(system.weight_of(beta))
        return system.root_vector_of(image)


def simple_reflection_matrix(system: RootSystem, i: int) -> linalg.Mat:
    r = system.rank
    return tuple(
        tuple(
            Fraction((1 if k == j else 0) - (system.cartan[i][j] if k == i else 0))
            for j in range(r)
        )
        for k in range(r)
    )


def identity_element(system: RootSystem) -> WeylElement:
    return WeylElement((), linalg.identity(system.rank))


def simple_reflection(system: RootSystem, i: int) -> WeylElement:
    if not 0 <= i < system.rank:
        raise ValueError("simple reflection index out of range")
    return WeylElement((i,), simple_reflection_matrix(system, i))


def compose(u: WeylElement, v: WeylElement) -> WeylElement:
    """u o v (apply v first)."""
    return WeylElement(u.word + v.word, linalg.mat_mul(v.matrix, u.matrix))


def inverse(w: WeylElement) -> WeylElement:
    return WeylElement(tuple(reversed(w.word)), linalg.inverse(w.matrix))


_weyl_cache: dict[tuple, tuple[WeylElement, ...]] = {}


def enumerate_weyl(system: RootSystem) -> tuple[WeylElement, ...]:
    """Breadth-first closure over simple reflections.

    Each element carries a minimal-length word (BFS geodesics). The cache is
    filled once per root system and reused read-only afterwards.
    """
    cached = _weyl_cache.get(system.cartan)
    if cached is not None:
        return cached
    _check_rank(system)
    gens = [simple_reflection(system, i) for i in range(system.rank)]
    ident = identity_element(system)
    seen = {ident.matrix}
    elements = [ident]
    frontier = [ident]
    while frontier:
        nxt = []
        for w in frontier:
            for g in gens:
                cand = compose(w, g)
                if cand.matrix not in seen:
                    seen.add(cand.matrix)
                    elements.append(cand)
                    nxt.append(cand)
        frontier = nxt
    result = tuple(elements)
    _weyl_cache[system.cartan] = result
    return result


@lru_cache(maxsize=4096)
def _torus_matrix(system: RootSystem, matrix: linalg.Mat) -> linalg.Mat:
    # evaluation-coordinate matrix of the contragredient action:
    # x'_i = (w^{-1} alpha_i)(t), assembled as C M_{w^{-1}} C^{-1}
    inv = linalg.inverse(matrix)
    cart = tuple(tuple(Fraction(e) for e in row) for row in system.cartan)
    return linalg.mat_mul(linalg.mat_mul(cart, inv), system.cartan_inv)


def act(system: RootSystem, w: WeylElement, t: TorusVector) -> TorusVector:
    """Contragredient action: evaluate(w(chi), t) = evaluate(chi, act(w^{-1}, t))."""
    m = _torus_matrix(system, w.matrix)
    if t.is_exact():
        return TorusVector(linalg.mat_vec(m, t.coords))
    return TorusVector(
        tuple(sum(float(a) * float(x) for a, x in zip(row, t.coords)) for row in m)
    )


def dominate(system: RootSystem, chi: Weight) -> tuple[Weight, WeylElement]:
    """The dominant W-conjugate and a Weyl element realizing it.

    Reflects at the lowest-index negative coordinate until dominant; the
    resulting weight is independent of the tie-breaking, the element is not.
    """
    current = chi
    w = identity_element(system)
    guard = 4 * system.weyl_order() if system.rank <= 8 else 10**9
    for _ in range(guard):
        neg = next((i for i, c in enumerate(current.coords) if c < 0), None)
        if neg is None:
            return current, w
        s = simple_reflection(system, neg)
        current = s.apply(current)
        w = compose(s, w)
    raise RootcertError("dominance loop failed to terminate")  # pragma: no cover


def orbit(system: RootSystem, chi: Weight) -> frozenset[Weight]:
    """Full W-orbit of a weight via closure under simple reflections."""
    _check_rank(system)
    gens = [simple_reflection(system, i) for i in range(system.rank)]
    seen = {chi}
    frontier = [chi]
    while frontier:
        nxt = []
        for mu in frontier:
            for g in gens:
                img = g.apply(mu)
                if img not in seen:
                    seen.add(img)
                    nxt.append(img)
        frontier = nxt
    return frozenset(seen)


class _ZeroToken:
    __slots__ = ()

    def __repr__(self) -> str:
        return "ZERO"


ZERO = _ZeroToken()


def _component_diagnostic(system: RootSystem, chi: Weight, t: TorusVector) -> str:
    lines = []
    for k, comp in enumerate(system.components):
        chi_part = any(chi.coords[i] != 0 for i in comp)
        t_part = any(t.coords[i] != 0 for i in comp)
        lines.append(
            f"component {k + 1} ({system.component_names[k]}): "
            f"chi {'non' if chi_part else ''}zero, t {'non' if t_part else ''}zero"
        )
    return "; ".join(lines)


def one_step_search(system: RootSystem, chi: Weight, t: TorusVector):
    """one_step plus the geodesic witness word (for minimality checks)."""
    if chi.is_zero():
        raise ValueError("one_step requires a nonzero character")
    if t.is_zero():
        raise ValueError("one_step requires a nonzero torus vector")
    if system.evaluate(chi, t) != 0:
        return ZERO, ()
    _check_rank(system)
    gens = [simple_reflection(system, i) for i in range(system.rank)]
    ident = identity_element(system)
    seen = {ident.matrix}
    frontier = [ident]
    while frontier:
        nxt = []
        for w in frontier:
            for g in gens:
                cand = compose(w, g)
                if cand.matrix in seen:
                    continue
                seen.add(cand.matrix)
                if system.evaluate(cand.apply(chi), t) != 0:
                    last = cand.word[-1]
                    beta = w.apply_root(system, system.simple_root(last))
                    if not system.is_root(beta):  # pragma: no cover
                        raise RootcertError("extracted vector is not a root")
                    check = system.evaluate(system.reflect(chi, beta), t)
                    if check == 0:  # pragma: no cover
                        raise RootcertError(
                            "one_step postcondition failed: s_beta(chi)(t) = 0"
                        )
                    return beta, cand.word
                nxt.append(cand)
        frontier = nxt
    raise RootcertError(
        "no Weyl element separates chi from t; " + _component_diagnostic(system, chi, t)
    )


def one_step(system: RootSystem, chi: Weight, t: TorusVector):
    """A root beta with s_beta(chi)(t) != 0, or ZERO when chi(t) != 0 already.

    Searches breadth-first for a minimal-length w with w(chi)(t) != 0 and
    extracts beta from the geodesic word; the minimal-word structure makes
    s_beta(chi)(t) equal w(chi)(t). For reducible systems this succeeds
    exactly when some component sees nonzero projections of both chi and t.
    """
    return one_step_search(system, chi, t)[0]
