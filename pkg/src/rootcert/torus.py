"""Ambient torus with a designated split part, and split/anisotropic logic.

The ambient torus carries the Killing-form inner product, which in
evaluation coordinates is the inverse of the simple-root Gram matrix. The
split subspace comes with its orthogonal complement (the anisotropic
part); rational characters are exactly the functionals represented inside
the split subspace. Restricted roots are orthogonal projections of the
ambient roots; when they form a crystallographic reduced system they are
assembled into an abstract root system for the downstream certificate
machinery (divisible multiples, as in BC-type configurations, are dropped
and recorded).

Everything is exact: float inputs are snapped to rationals on entry,
because the split/anisotropic decomposition is discontinuous.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from . import linalg, weyl
from .rootcore import RootcertError, RootSystem, RootVector, TorusVector, Weight

SNAP_TOLERANCE = 1e-9


def snap_rational(x, tol: float = SNAP_TOLERANCE) -> Fraction:
    """Smallest-denominator rational within `tol` (continued-fraction snap)."""
    if isinstance(x, (int, Fraction)):
        return Fraction(x)
    exact = Fraction(x)
    limit = 1
    while limit <= 10**13:
        cand = exact.limit_denominator(limit)
        if abs(cand - exact) <= tol:
            return cand
        limit *= 10
    return exact  # pragma: no cover


@dataclass(frozen=True)
class SubtorusSubspace:
    """Linearly independent torus vectors spanning a subspace of the torus."""

    basis: tuple[TorusVector, ...]
    exact: bool

    @property
    def dim(self) -> int:
        return len(self.basis)


def subspace(ambient: RootSystem, rows: Sequence[Sequence]) -> SubtorusSubspace:
    vectors = [ambient.torus(row) for row in rows]
    if not vectors:
        raise ValueError("a subtorus subspace needs at least one basis vector")
    exact = all(v.is_exact() for v in vectors)
    if exact:
        if linalg.rank([v.coords for v in vectors]) != len(vectors):
            raise ValueError("subspace basis vectors are linearly dependent")
    return SubtorusSubspace(tuple(vectors), exact)


def rationalize(ambient: RootSystem, sub: SubtorusSubspace) -> SubtorusSubspace:
    """Snap a float-mode subspace to exact rational coordinates."""
    if sub.exact:
        return sub
    rows = [[snap_rational(c) for c in v.coords] for v in sub.basis]
    return subspace(ambient, rows)


class SplitDatum:
    """Ambient root system plus the split part of its torus."""

    def __init__(self, ambient: RootSystem, split_basis: Sequence[Sequence]):
        self.ambient = ambient
        sub = rationalize(ambient, subspace(ambient, split_basis))
        self.split_basis = sub.basis
        self.rank_q = len(self.split_basis)
        self.metric = ambient.inner_inv  # kappa in evaluation coordinates
        self._smat = linalg.transpose([v.coords for v in self.split_basis])  # n x m
        self._sg = linalg.mat_mul(linalg.transpose(self._smat), self.metric)  # m x n
        gram = linalg.mat_mul(self._sg, self._smat)  # m x m, kappa on the split part
        self._split_gram = gram
        self._split_gram_inv = linalg.inverse(gram)
        self.aniso_basis = tuple(
            TorusVector(v) for v in linalg.nullspace(self._sg)
        )
        self.qsys: Optional[RootSystem] = None
        self.qsys_error: Optional[str] = None
        self.q_simple_reps: tuple[TorusVector, ...] = ()
        self.dropped_multiples: tuple[tuple[Fraction, ...], ...] = ()
        self._assemble_restricted()

    # -- restricted root system -----------------------------------------

    def split_coords(self, t: TorusVector) -> linalg.Vec:
        """Coordinates of the orthogonal projection of t in the split basis."""
        return linalg.mat_vec(self._split_gram_inv, linalg.mat_vec(self._sg, t.coords))

    def project_to_split(self, t: TorusVector) -> TorusVector:
        return TorusVector(linalg.mat_vec(self._smat, self.split_coords(t)))

    def _assemble_restricted(self) -> None:
        # visit simple roots in index order first so that, for split-aligned
        # data, the restricted system inherits the ambient indexing
        ordered_roots = [self.ambient.simple_root(i) for i in range(self.ambient.rank)]
        simple_set = {b.coords for b in ordered_roots}
        ordered_roots += [b for b in self.ambient.positive_roots if b.coords not in simple_set]
        seen: list[tuple[Fraction, ...]] = []
        projections: set[tuple[Fraction, ...]] = set()
        for beta in ordered_roots:
            x = linalg.mat_vec(self.ambient.inner_form, beta.coords)  # t_beta
            c = tuple(self.split_coords(TorusVector(x)))
            if any(e != 0 for e in c):
                if c not in projections:
                    seen.append(c)
                projections.add(c)
                projections.add(tuple(-e for e in c))
        if not projections:
            self.qsys_error = "no ambient root restricts nontrivially to the split part"
            return
        if linalg.rank(sorted(projections)) != self.rank_q:
            self.qsys_error = "restricted roots do not span the split part"
            return
        # prefer the positivity inherited from the ambient positive roots;
        # fall back to a lexicographic choice when restrictions collide
        if any(tuple(-e for e in c) in seen for c in seen):
            positive = sorted(c for c in projections if _lex_positive(c))
        else:
            positive = seen
        pos_set = set(positive)
        indecomposable = [
            c
            for c in positive
            if not any(
                tuple(a - b for a, b in zip(c, d)) in pos_set for d in positive if d != c
            )
        ]
        try:
            self._build_qsys(indecomposable, projections)
        except (ValueError, RootcertError) as exc:
            self.qsys = None
            self.q_simple_reps = ()
            self.qsys_error = f"restricted roots do not form a reduced root system: {exc}"

    def _build_qsys(self, simples, projections) -> None:
        m = self._split_gram
        if len(simples) != self.rank_q:
            raise ValueError(
                f"{len(simples)} indecomposable restricted roots for split rank {self.rank_q}"
            )

        def inner(c, d):
            return linalg.dot(c, linalg.mat_vec(m, d))

        cartan = []
        for ci in simples:
            row = []
            for cj in simples:
                val = 2 * inner(ci, cj) / inner(cj, cj)
                if val.denominator != 1:
                    raise ValueError(f"non-integral restricted Cartan pairing {val}")
                row.append(int(val))
            cartan.append(row)
        qsys = RootSystem(cartan)
        images = set()
        for beta in qsys.positive_roots:
            img = tuple(
                sum((beta.coords[i] * simples[i][k] for i in range(self.rank_q)), Fraction(0))
                for k in range(self.rank_q)
            )
            if img not in projections:
                raise ValueError("abstract root has no matching restricted root")
            images.add(img)
            images.add(tuple(-e for e in img))
        dropped = []
        for c in sorted(projections):
            if c in images:
                continue
            half = tuple(e / 2 for e in c)
            if half not in images:
                raise ValueError("restricted root is neither a root image nor twice one")
            dropped.append(c)
        self.qsys = qsys
        self.dropped_multiples = tuple(d for d in dropped if _lex_positive(d))
        self.q_simple_reps = tuple(
            TorusVector(linalg.mat_vec(self._smat, linalg.vec(c))) for c in simples
        )

    def require_qsys(self) -> RootSystem:
        if self.qsys is None:
            raise RootcertError(
                "this split datum has no restricted root system: "
                + (self.qsys_error or "unknown reason")
            )
        return self.qsys

    # -- characters ------------------------------------------------------

    def q_eval_coords(self, t: TorusVector) -> TorusVector:
        """Evaluation coordinates of t against the restricted simple roots.

        For t outside the split part this realizes the extension-by-zero of
        restricted characters across the anisotropic part.
        """
        self.require_qsys()
        vals = tuple(
            linalg.dot(linalg.mat_vec(self.metric, rep.coords), t.coords)
            for rep in self.q_simple_reps
        )
        return TorusVector(vals)

    def ambient_weight_of_rep(self, u: TorusVector) -> Weight:
        """Ambient character kappa(u, .) for a representative u in the torus."""
        d = linalg.mat_vec(self.metric, u.coords)
        return Weight(linalg.vec_mat(d, tuple(tuple(Fraction(e) for e in row) for row in self.ambient.cartan)))

    def q_weight_coords_of_rep(self, u: TorusVector) -> tuple[Fraction, ...]:
        """Restricted fundamental-weight coordinates of kappa(u, .)|_split."""
        self.require_qsys()
        coords = []
        for rep in self.q_simple_reps:
            gr = linalg.mat_vec(self.metric, rep.coords)
            coords.append(2 * linalg.dot(gr, u.coords) / linalg.dot(gr, rep.coords))
        return tuple(coords)


def _lex_positive(c) -> bool:
    for e in c:
        if e != 0:
            return e > 0
    return False


def fully_split(ambient: RootSystem) -> SplitDatum:
    """Split datum with the whole torus split (GL-like ambient data)."""
    return SplitDatum(ambient, linalg.identity(ambient.rank))


# -- decomposition and conjugation ----------------------------------------


def decompose(
    a: SubtorusSubspace, d: SplitDatum
) -> tuple[Optional[SubtorusSubspace], Optional[SubtorusSubspace]]:
    """Split a subspace into (anisotropic part, split complement).

    The anisotropic part is the intersection with the kernel of all
    rational characters; the complement is taken orthogonally inside `a`,
    so the two parts recombine to exactly `a`.
    """
    a = rationalize(d.ambient, a)
    amat = linalg.transpose([v.coords for v in a.basis])  # n x k
    constraints = linalg.mat_mul(d._sg, amat)  # m x k
    ani_coeffs = linalg.nullspace(constraints)
    if not ani_coeffs:
        return None, a
    ani_vecs = [linalg.mat_vec(amat, c) for c in ani_coeffs]
    ani = SubtorusSubspace(
        tuple(TorusVector(linalg.primitive(v)) for v in ani_vecs), True
    )
    if ani.dim == a.dim:
        return a, None
    rows = [
        linalg.vec_mat(linalg.mat_vec(d.metric, v.coords), amat) for v in ani.basis
    ]
    spl_coeffs = linalg.nullspace(rows)
    spl = SubtorusSubspace(
        tuple(
            TorusVector(linalg.primitive(linalg.mat_vec(amat, c))) for c in spl_coeffs
        ),
        True,
    )
    if ani.dim + spl.dim != a.dim:  # pragma: no cover
        raise RootcertError("decomposition dimensions do not add up")
    return ani, spl


def q_character_vanishing_on(
    spl: Optional[SubtorusSubspace], d: SplitDatum
) -> Weight:
    """Nonzero rational character vanishing on `spl` (and on the anisotropic part).

    Returns the extended ambient character; its kappa-representative lies in
    the split part, so it vanishes on the orthogonal complement by
    construction. Requires dim spl < split rank.
    """
    k = 0 if spl is None else spl.dim
    if k >= d.rank_q:
        raise RootcertError(
            f"no rational character is guaranteed: dim spl = {k} >= rank_q = {d.rank_q}"
        )
    if spl is None:
        coeffs = (tuple(Fraction(1 if i == 0 else 0) for i in range(d.rank_q)),)
    else:
        rows = [linalg.vec_mat(linalg.mat_vec(d.metric, v.coords), d._smat) for v in spl.basis]
        coeffs = linalg.nullspace(rows)
    if not coeffs:  # pragma: no cover
        raise RootcertError("kernel computation returned no character")
    u = TorusVector(linalg.primitive(linalg.mat_vec(d._smat, coeffs[0])))
    return d.ambient_weight_of_rep(u)


def rep_of_q_character(chi: Weight, d: SplitDatum) -> TorusVector:
    """kappa-representative (in evaluation coordinates) of an ambient character."""
    dvec = d.ambient.to_simple(chi)
    return TorusVector(linalg.mat_vec(d.ambient.inner_form, dvec))


def reflection_element(system: RootSystem, beta: RootVector) -> weyl.WeylElement:
    """s_beta as a Weyl element with an explicit simple-reflection word."""
    if not system.is_root(beta):
        raise ValueError("reflection_element expects a root")
    if not beta.is_positive():
        return reflection_element(system, -beta)
    for i in range(system.rank):
        if beta == system.simple_root(i):
            return weyl.simple_reflection(system, i)
    for i in range(system.rank):
        if system.pairing(beta, system.simple_root(i)) > 0:
            image = system.reflect(beta, system.simple_root(i))
            if image != beta and image.is_positive():
                s = weyl.simple_reflection(system, i)
                return weyl.compose(weyl.compose(s, reflection_element(system, image)), s)
    raise RootcertError("no descent found for a positive root")  # pragma: no cover


def make_almost_split(
    a: SubtorusSubspace, d: SplitDatum
) -> tuple[weyl.WeylElement, SubtorusSubspace, list[dict]]:
    """Conjugate `a` by reflections until its anisotropic part is trivial.

    Loop invariant: each step picks a rational character chi vanishing on the
    current subspace, a nonzero anisotropic vector, and a one-step reflection
    beta; applying s_beta shrinks the anisotropic part by exactly one
    dimension, so at most dim(a) steps run. The trace records
    (chi, beta, new split dimension) per step.
    """
    a = rationalize(d.ambient, a)
    if a.dim > d.rank_q:
        raise RootcertError(
            f"make_almost_split requires dim(a) = {a.dim} <= rank_q = {d.rank_q}"
        )
    w = weyl.identity_element(d.ambient)
    current = a
    trace: list[dict] = []
    for _ in range(a.dim + 1):
        ani, spl = decompose(current, d)
        if ani is None:
            return w, current, trace
        chi = q_character_vanishing_on(spl, d)
        anchor = ani.basis[0]
        beta = weyl.one_step(d.ambient, chi, anchor)
        if beta is weyl.ZERO:  # pragma: no cover
            raise RootcertError("one_step returned ZERO for a character built to vanish")
        refl = reflection_element(d.ambient, beta)
        new_basis = tuple(weyl.act(d.ambient, refl, v) for v in current.basis)
        current = SubtorusSubspace(new_basis, True)
        w = weyl.compose(refl, w)
        ani_after, _ = decompose(current, d)
        new_split_dim = current.dim - (0 if ani_after is None else ani_after.dim)
        trace.append(
            {
                "chi": chi.coords,
                "beta": beta.coords,
                "new_split_dim": new_split_dim,
            }
        )
    raise RootcertError("conjugation loop exceeded the dimension bound")  # pragma: no cover
