"""Exact root systems: Cartan data, pairings, reflections, evaluation.

Conventions, fixed once for the whole package:

* weights live in fundamental-weight coordinates (chi = sum c_i chi_i),
* roots live in simple-root coordinates (beta = sum d_i alpha_i),
* torus vectors live in simple-root evaluation coordinates (x_i = alpha_i(t)),
* the normalized pairing divides by the norm of the SECOND argument,
  <chi, beta> = 2 (chi, beta) / (beta, beta), which is the normalization
  that makes <chi_i, alpha_j> the Kronecker delta and the reflection
  formula s_beta(chi) = chi - <chi, beta> beta involutive,
* the invariant form is scaled per irreducible component so long roots
  have squared norm 2 (all pairings are scale-invariant ratios anyway).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence, Union

from . import linalg
from .linalg import Fraction as _F  # noqa: F401  (re-export convenience)


class RootcertError(Exception):
    """Base class for domain errors raised by this package."""


class NotFiniteTypeError(RootcertError):
    """Cartan matrix fails the finite-type test; carries the bad minor."""

    def __init__(self, order: int, value: Fraction, message: str | None = None):
        self.order = order
        self.value = value
        super().__init__(
            message
            or f"not a finite-type Cartan matrix: leading principal minor of order {order} is {value}"
        )


@dataclass(frozen=True)
class Weight:
    """Character in fundamental-weight coordinates."""

    coords: tuple[Fraction, ...]

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coords)

    def is_dominant(self) -> bool:
        return all(c >= 0 for c in self.coords)

    def __add__(self, other: "Weight") -> "Weight":
        return Weight(linalg.add(self.coords, other.coords))

    def __sub__(self, other: "Weight") -> "Weight":
        return Weight(linalg.sub(self.coords, other.coords))

    def __neg__(self) -> "Weight":
        return Weight(tuple(-c for c in self.coords))

    def __rmul__(self, c) -> "Weight":
        return Weight(linalg.scale(c, self.coords))


@dataclass(frozen=True)
class RootVector:
    """Root-lattice element in simple-root coordinates."""

    coords: tuple[Fraction, ...]

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coords)

    def is_positive(self) -> bool:
        return not self.is_zero() and all(c >= 0 for c in self.coords)

    def height(self) -> Fraction:
        return sum(self.coords, Fraction(0))

    def __add__(self, other: "RootVector") -> "RootVector":
        return RootVector(linalg.add(self.coords, other.coords))

    def __sub__(self, other: "RootVector") -> "RootVector":
        return RootVector(linalg.sub(self.coords, other.coords))

    def __neg__(self) -> "RootVector":
        return RootVector(tuple(-c for c in self.coords))

    def __ge__(self, other: "RootVector") -> bool:
        """Coordinatewise partial order on simple-root coordinates."""
        return all(a >= b for a, b in zip(self.coords, other.coords))


@dataclass(frozen=True)
class TorusVector:
    """Torus Lie-algebra element; coords[i] = alpha_i(t).

    Coordinates are exact rationals in the core pipeline; floats are
    accepted for approximate-mode inputs (they are snapped to rationals
    before any exact decomposition happens).
    """

    coords: tuple

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coords)

    def is_exact(self) -> bool:
        return all(isinstance(c, (Fraction, int)) for c in self.coords)

    def __add__(self, other: "TorusVector") -> "TorusVector":
        return TorusVector(tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __neg__(self) -> "TorusVector":
        return TorusVector(tuple(-c for c in self.coords))

    def __rmul__(self, c) -> "TorusVector":
        return TorusVector(tuple(c * x for x in self.coords))


CharacterLike = Union[Weight, RootVector]

_SERIES = "ABCDEFG"

_WEYL_ORDERS = {
    "E6": 51_840,
    "E7": 2_903_040,
    "E8": 696_729_600,
    "F4": 1_152,
    "G2": 12,
}


def _series_cartan(letter: str, n: int) -> list[list[int]]:
    def chain(m):
        c = [[2 if i == j else 0 for j in range(m)] for i in range(m)]
        for i in range(m - 1):
            c[i][i + 1] = -1
            c[i + 1][i] = -1
        return c

    if letter == "A":
        if n < 1:
            raise ValueError("A requires rank >= 1")
        return chain(n)
    if letter in ("B", "C"):
        if n < 2:
            raise ValueError(f"{letter} requires rank >= 2")
        c = chain(n)
        if letter == "B":
            c[n - 2][n - 1] = -2  # last simple root short
        else:
            c[n - 1][n - 2] = -2  # last simple root long
        return c
    if letter == "D":
        if n < 4:
            raise ValueError("D requires rank >= 4")
        c = chain(n - 1)
        for row in c:
            row.append(0)
        c.append([0] * n)
        c[n - 1][n - 1] = 2
        c[n - 1][n - 3] = -1
        c[n - 3][n - 1] = -1
        c[n - 1][n - 2] = 0
        c[n - 2][n - 1] = 0
        return c
    if letter == "E":
        if n not in (6, 7, 8):
            raise ValueError("E requires rank 6, 7 or 8")
        c = [[2 if i == j else 0 for j in range(n)] for i in range(n)]
        edges = [(0, 2), (1, 3), (2, 3), (3, 4), (4, 5)]
        if n >= 7:
            edges.append((5, 6))
        if n == 8:
            edges.append((6, 7))
        for i, j in edges:
            c[i][j] = -1
            c[j][i] = -1
        return c
    if letter == "F":
        if n != 4:
            raise ValueError("F requires rank 4")
        return [[2, -1, 0, 0], [-1, 2, -2, 0], [0, -1, 2, -1], [0, 0, -1, 2]]
    if letter == "G":
        if n != 2:
            raise ValueError("G requires rank 2")
        return [[2, -1], [-3, 2]]
    raise ValueError(f"unknown series letter {letter!r}")


def _direct_sum(blocks: list[list[list[int]]]) -> list[list[int]]:
    n = sum(len(b) for b in blocks)
    c = [[0] * n for _ in range(n)]
    off = 0
    for b in blocks:
        m = len(b)
        for i in range(m):
            for j in range(m):
                c[off + i][off + j] = b[i][j]
        off += m
    return c


def _parse_kind(kind: str) -> list[list[int]]:
    text = kind.replace("×", "x").replace("+", "x").strip()
    blocks = []
    for part in text.split("x"):
        part = part.strip()
        if len(part) < 2 or part[0].upper() not in _SERIES or not part[1:].isdigit():
            raise ValueError(f"cannot parse root-system kind {part!r}")
        blocks.append(_series_cartan(part[0].upper(), int(part[1:])))
    if not blocks:
        raise ValueError("empty root-system kind")
    return _direct_sum(blocks)


def _validate_cartan(c: Sequence[Sequence[int]]) -> tuple[tuple[int, ...], ...]:
    n = len(c)
    if n == 0 or any(len(row) != n for row in c):
        raise ValueError("Cartan matrix must be square and non-empty")
    out = []
    for i in range(n):
        row = []
        for j in range(n):
            e = c[i][j]
            if e != int(e):
                raise ValueError(f"Cartan entry ({i + 1},{j + 1}) must be an integer")
            e = int(e)
            if i == j and e != 2:
                raise ValueError("Cartan diagonal must be 2")
            if i != j and e > 0:
                raise ValueError(f"Cartan entry ({i + 1},{j + 1}) must be non-positive")
            row.append(e)
        out.append(tuple(row))
    for i in range(n):
        for j in range(n):
            if (out[i][j] == 0) != (out[j][i] == 0):
                raise ValueError(f"Cartan zeros must be symmetric at ({i + 1},{j + 1})")
    return tuple(out)


def _components(cartan) -> tuple[tuple[int, ...], ...]:
    n = len(cartan)
    seen = [False] * n
    comps = []
    for start in range(n):
        if seen[start]:
            continue
        stack, comp = [start], []
        seen[start] = True
        while stack:
            i = stack.pop()
            comp.append(i)
            for j in range(n):
                if not seen[j] and cartan[i][j] != 0:
                    seen[j] = True
                    stack.append(j)
        comps.append(tuple(sorted(comp)))
    return tuple(comps)


def _symmetrizer(cartan, components) -> tuple[Fraction, ...]:
    """Positive d with C[i][j] d[j] = C[j][i] d[i], long roots scaled to d = 1."""
    n = len(cartan)
    d: list[Fraction | None] = [None] * n
    for comp in components:
        d[comp[0]] = Fraction(1)
        frontier = [comp[0]]
        while frontier:
            i = frontier.pop()
            for j in comp:
                if cartan[i][j] != 0 and i != j:
                    val = d[i] * Fraction(cartan[j][i], cartan[i][j])
                    if d[j] is None:
                        d[j] = val
                        frontier.append(j)
                    elif d[j] != val:
                        raise ValueError("Cartan matrix is not symmetrizable")
        top = max(d[i] for i in comp)
        for i in comp:
            d[i] = d[i] / top
    return tuple(d)  # type: ignore[arg-type]


def _classify_component(cartan, comp) -> str:
    """Human name of one irreducible block (best effort, exact for A-G)."""
    n = len(comp)
    idx = {v: k for k, v in enumerate(comp)}
    sub = [[cartan[i][j] for j in comp] for i in comp]
    if n == 1:
        return "A1"
    products = {}
    degrees = [0] * n
    for a in range(n):
        for b in range(a + 1, n):
            if sub[a][b] != 0:
                degrees[a] += 1
                degrees[b] += 1
                products[(a, b)] = sub[a][b] * sub[b][a]
    if any(p == 3 for p in products.values()):
        return "G2" if n == 2 else f"X{n}"
    doubles = [e for e, p in products.items() if p == 2]
    if doubles:
        if len(doubles) > 1 or any(p > 3 for p in products.values()):
            return f"X{n}"
        if n == 2:
            return "B2"
        a, b = doubles[0]
        if degrees[a] > 1 and degrees[b] > 1:
            return "F4" if n == 4 else f"X{n}"
        # single double edge at the chain end: B if the short root is the
        # leaf, C otherwise
        short = b if sub[a][b] == -2 else a
        return f"B{n}" if degrees[short] == 1 else f"C{n}"
    if max(degrees) <= 2:
        return f"A{n}"
    if degrees.count(3) == 1 and max(degrees) == 3:
        hub = degrees.index(3)
        arms = []
        for nb in range(n):
            if (min(hub, nb), max(hub, nb)) in products:
                length = 1
                prev, cur = hub, nb
                while degrees[cur] == 2:
                    nxt = next(
                        k
                        for k in range(n)
                        if k != prev and (min(cur, k), max(cur, k)) in products
                    )
                    prev, cur = cur, nxt
                    length += 1
                arms.append(length)
        arms.sort()
        if arms == [1, 1, n - 3]:
            return f"D{n}"
        if arms == [1, 2, n - 4] and n in (6, 7, 8):
            return f"E{n}"
    return f"X{n}"


def weyl_order_estimate(name: str) -> int:
    """Classical Weyl group order for a component name like 'B3'."""
    if name in _WEYL_ORDERS:
        return _WEYL_ORDERS[name]
    letter, n = name[0], int(name[1:])
    fact = 1
    for k in range(2, n + 1):
        fact *= k
    if letter == "A":
        return fact * (n + 1)
    if letter in ("B", "C"):
        return (2**n) * fact
    if letter == "D":
        return (2 ** (n - 1)) * fact
    raise ValueError(f"no order formula for {name}")


class RootSystem:
    """A finite (possibly reducible) root system with exact Cartan data."""

    def __init__(self, cartan: Sequence[Sequence[int]]):
        self.cartan = _validate_cartan(cartan)
        self.rank = len(self.cartan)
        self.components = _components(self.cartan)
        self.symmetrizer = _symmetrizer(self.cartan, self.components)
        # inner_form[i][j] = (alpha_i, alpha_j); positive definite iff finite type
        self.inner_form = tuple(
            tuple(Fraction(self.cartan[i][j]) * self.symmetrizer[j] for j in range(self.rank))
            for i in range(self.rank)
        )
        minors = linalg.leading_principal_minors(self.inner_form)
        for k, m in enumerate(minors, start=1):
            if m <= 0:
                raise NotFiniteTypeError(k, m)
        self.cartan_inv = linalg.inverse(self.cartan)
        self.inner_inv = linalg.inverse(self.inner_form)
        self.positive_roots = self._enumerate_positive_roots()
        self.roots = self.positive_roots + tuple(-b for b in self.positive_roots)
        self._root_set = frozenset(b.coords for b in self.roots)
        self.component_names = tuple(
            _classify_component(self.cartan, comp) for comp in self.components
        )

    # -- construction -------------------------------------------------

    def _enumerate_positive_roots(self) -> tuple[RootVector, ...]:
        simple = [tuple(Fraction(1 if k == i else 0) for k in range(self.rank)) for i in range(self.rank)]
        seen = set(simple)
        frontier = list(simple)
        while frontier:
            nxt = []
            for d in frontier:
                pair_row = linalg.vec_mat(d, self.cartan)
                for i in range(self.rank):
                    nd = list(d)
                    nd[i] = d[i] - pair_row[i]
                    nd = tuple(nd)
                    if nd not in seen:
                        seen.add(nd)
                        nxt.append(nd)
            frontier = nxt
        pos = [RootVector(d) for d in seen if all(c >= 0 for c in d)]
        pos.sort(key=lambda b: (b.height(), b.coords))
        return tuple(pos)

    # -- identity ------------------------------------------------------

    def __eq__(self, other) -> bool:
        return isinstance(other, RootSystem) and self.cartan == other.cartan

    def __hash__(self) -> int:
        return hash(self.cartan)

    def __repr__(self) -> str:
        return f"RootSystem({self.name})"

    @property
    def name(self) -> str:
        return "x".join(self.component_names)

    # -- coordinates ---------------------------------------------------

    def weight(self, coords: Iterable) -> Weight:
        c = linalg.vec(coords)
        if len(c) != self.rank:
            raise ValueError("coordinate length does not match rank")
        return Weight(c)

    def root(self, coords: Iterable) -> RootVector:
        c = linalg.vec(coords)
        if len(c) != self.rank:
            raise ValueError("coordinate length does not match rank")
        return RootVector(c)

    def torus(self, coords: Iterable) -> TorusVector:
        coords = tuple(coords)
        if len(coords) != self.rank:
            raise ValueError("coordinate length does not match rank")
        if all(isinstance(c, (int, Fraction)) for c in coords):
            return TorusVector(linalg.vec(coords))
        return TorusVector(tuple(float(c) for c in coords))

    def simple_root(self, i: int) -> RootVector:
        return RootVector(tuple(Fraction(1 if k == i else 0) for k in range(self.rank)))

    def fundamental_weight(self, i: int) -> Weight:
        return Weight(tuple(Fraction(1 if k == i else 0) for k in range(self.rank)))

    def zero_weight(self) -> Weight:
        return Weight(linalg.zeros(self.rank))

    def to_simple(self, chi: CharacterLike) -> linalg.Vec:
        """Simple-root coordinates of a Weight or RootVector."""
        if isinstance(chi, RootVector):
            return chi.coords
        return linalg.vec_mat(chi.coords, self.cartan_inv)

    def to_fundamental(self, chi: CharacterLike) -> linalg.Vec:
        if isinstance(chi, Weight):
            return chi.coords
        return linalg.vec_mat(chi.coords, self.cartan)

    def weight_of(self, beta: RootVector) -> Weight:
        return Weight(self.to_fundamental(beta))

    def root_vector_of(self, chi: Weight) -> RootVector:
        return RootVector(self.to_simple(chi))

    def is_root(self, beta: RootVector) -> bool:
        return beta.coords in self._root_set

    # -- the three core operations --------------------------------------

    def inner_product(self, a: CharacterLike, b: CharacterLike) -> Fraction:
        """Invariant inner product (a, b) induced by the Killing form."""
        da, db = self.to_simple(a), self.to_simple(b)
        return linalg.dot(da, linalg.mat_vec(self.inner_form, db))

    def pairing(self, chi1: CharacterLike, chi2: CharacterLike) -> Fraction:
        """<chi1, chi2> = 2 (chi1, chi2) / (chi2, chi2)."""
        nn = self.inner_product(chi2, chi2)
        if nn == 0:
            raise ValueError("pairing is undefined against the zero character")
        return 2 * self.inner_product(chi1, chi2) / nn

    def reflect(self, chi: CharacterLike, beta: RootVector):
        """s_beta(chi) = chi - <chi, beta> beta; beta must be a root."""
        if not self.is_root(beta):
            raise ValueError(f"{beta.coords} is not a root of {self.name}")
        c = self.pairing(chi, beta)
        if isinstance(chi, Weight):
            return chi - c * self.weight_of(beta)
        return chi - RootVector(linalg.scale(c, beta.coords))

    def evaluate(self, chi: CharacterLike, t: TorusVector):
        """chi(t) in evaluation coordinates; exact when both sides are exact."""
        d = self.to_simple(chi)
        if t.is_exact():
            return linalg.dot(d, t.coords)
        return float(sum(float(a) * float(x) for a, x in zip(d, t.coords)))

    def highest_root(self, component: int) -> RootVector:
        """The unique root >= every root of the given irreducible block."""
        comp = set(self.components[component])
        block = [b for b in self.positive_roots if any(b.coords[i] != 0 for i in comp)]
        top = max(block, key=lambda b: (b.height(), b.coords))
        assert all(top >= b for b in block), "partial order violated"
        return top

    # -- component helpers ----------------------------------------------

    def component_of_root(self, beta: RootVector) -> int:
        support = {i for i, c in enumerate(beta.coords) if c != 0}
        for k, comp in enumerate(self.components):
            if support <= set(comp):
                return k
        raise ValueError("root support spans several components")

    def component_of_index(self, i: int) -> int:
        for k, comp in enumerate(self.components):
            if i in comp:
                return k
        raise ValueError("index out of range")

    def weyl_order(self) -> int:
        total = 1
        for name in self.component_names:
            total *= weyl_order_estimate(name)
        return total


def build_root_system(kind) -> RootSystem:
    """Build from a series label ("A2", "A1xA1", "G2") or a Cartan matrix.

    Direct sums are written with an "x" separator. A non-finite-type
    matrix is rejected with the first violating leading principal minor.
    """
    if isinstance(kind, str):
        return RootSystem(_parse_kind(kind))
    return RootSystem(kind)
