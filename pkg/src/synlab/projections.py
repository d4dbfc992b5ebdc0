"""Projections, effects, symmetries, partial symmetries, and the
orthomodular lattice operations on the projection set."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import (
    DimensionMismatch,
    InvariantViolation,
    NotProjection,
    SupportViolation,
)
from .linalg import (
    DEFAULT_TOL,
    SubspaceBasis,
    Tolerances,
    eig_sym,
    eigvals_sym,
    frob,
    range_basis,
    spec_norm,
    subspace_intersect,
    symmetrize,
)
from .order import loewner_cmp

__all__ = [
    "Projection",
    "Effect",
    "Symmetry",
    "PartialSymmetry",
    "carrier",
    "proj_meet",
    "proj_join",
    "orthocomplement",
    "is_orthogonal",
    "projection_to_symmetry",
    "symmetry_to_projection",
    "symmetry_projection_bijection",
    "exchange",
    "EffectProjOrderReport",
    "effect_proj_order_check",
]


@dataclass(frozen=True, eq=False)
class Projection:
    """Idempotent symmetric matrix; eigenvalues snapped to {0, 1} at construction."""

    matrix: np.ndarray
    rank: int

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    @staticmethod
    def from_matrix(m, tol: Tolerances = DEFAULT_TOL) -> "Projection":
        es = eig_sym(m, tol)
        snap = tol.eig
        snapped = np.empty_like(es.values)
        for i, lam in enumerate(es.values):
            if abs(lam) <= snap:
                snapped[i] = 0.0
            elif abs(lam - 1.0) <= snap:
                snapped[i] = 1.0
            else:
                raise NotProjection(f"eigenvalue {lam} is not within {snap} of {{0,1}}")
        rank = int(np.sum(snapped > 0.5))
        return Projection(matrix=es.reconstruct(snapped), rank=rank)

    @staticmethod
    def from_basis(basis: SubspaceBasis) -> "Projection":
        return Projection(matrix=basis.projector(), rank=basis.dim)

    @staticmethod
    def zero(dim: int) -> "Projection":
        return Projection(matrix=np.zeros((dim, dim)), rank=0)

    @staticmethod
    def identity(dim: int) -> "Projection":
        return Projection(matrix=np.eye(dim), rank=dim)

    def range(self, tol: Tolerances = DEFAULT_TOL) -> SubspaceBasis:
        return range_basis(self.matrix, tol)

    def is_zero(self) -> bool:
        return self.rank == 0

    def is_identity(self) -> bool:
        return self.rank == self.dim


@dataclass(frozen=True, eq=False)
class Effect:
    """Element e with 0 <= e <= 1 within the PSD slack."""

    matrix: np.ndarray

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    @staticmethod
    def from_matrix(m, tol: Tolerances = DEFAULT_TOL) -> "Effect":
        m = symmetrize(m)
        values = eigvals_sym(m, tol)
        if len(values) and (values[0] < -tol.psd or values[-1] > 1.0 + tol.psd):
            raise InvariantViolation(
                f"eigenvalues [{values[0]}, {values[-1]}] leave [0, 1]")
        return Effect(matrix=m)


@dataclass(frozen=True, eq=False)
class Symmetry:
    """Element s with s^2 = 1."""

    matrix: np.ndarray

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    @staticmethod
    def from_matrix(m, tol: Tolerances = DEFAULT_TOL) -> "Symmetry":
        m = symmetrize(m)
        res = frob(m @ m - np.eye(m.shape[0]))
        if res > tol.recon * max(1.0, frob(m) ** 2):
            raise InvariantViolation(f"s^2 - 1 residual {res} above tolerance")
        return Symmetry(matrix=m)


@dataclass(frozen=True, eq=False)
class PartialSymmetry:
    """Element t with t^2 = p for a projection p (the support)."""

    matrix: np.ndarray
    support: Projection

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    @staticmethod
    def from_matrix(m, support: Projection,
                    tol: Tolerances = DEFAULT_TOL) -> "PartialSymmetry":
        m = symmetrize(m)
        res = frob(m @ m - support.matrix)
        if res > tol.recon * max(1.0, frob(m) ** 2):
            raise InvariantViolation(f"t^2 - p residual {res} above tolerance")
        return PartialSymmetry(matrix=m, support=support)


def carrier(a, tol: Tolerances = DEFAULT_TOL) -> Projection:
    """The carrier (support) projection: orthogonal projector onto Ran(a)."""
    return Projection.from_basis(range_basis(a, tol))


def proj_meet(p: Projection, q: Projection, tol: Tolerances = DEFAULT_TOL) -> Projection:
    """Lattice meet p ∧ q: projector onto Ran(p) ∩ Ran(q)."""
    if p.dim != q.dim:
        raise DimensionMismatch(f"dims {p.dim} and {q.dim} differ")
    return Projection.from_basis(subspace_intersect(p.range(tol), q.range(tol), tol))


def orthocomplement(p: Projection) -> Projection:
    return Projection(matrix=np.eye(p.dim) - p.matrix, rank=p.dim - p.rank)


def proj_join(p: Projection, q: Projection, tol: Tolerances = DEFAULT_TOL) -> Projection:
    """Lattice join by De Morgan duality: (p^⊥ ∧ q^⊥)^⊥."""
    if p.dim != q.dim:
        raise DimensionMismatch(f"dims {p.dim} and {q.dim} differ")
    return orthocomplement(proj_meet(orthocomplement(p), orthocomplement(q), tol))


def is_orthogonal(p: Projection, q: Projection, tol: Tolerances = DEFAULT_TOL) -> bool:
    """p ⊥ q iff pq = 0."""
    if p.dim != q.dim:
        raise DimensionMismatch(f"dims {p.dim} and {q.dim} differ")
    return frob(p.matrix @ q.matrix) <= tol.recon


def projection_to_symmetry(p: Projection, tol: Tolerances = DEFAULT_TOL) -> Symmetry:
    """s = 2p - 1."""
    return Symmetry.from_matrix(2.0 * p.matrix - np.eye(p.dim), tol)


def symmetry_to_projection(s: Symmetry, tol: Tolerances = DEFAULT_TOL) -> Projection:
    """p = (s + 1)/2."""
    return Projection.from_matrix((s.matrix + np.eye(s.dim)) / 2.0, tol)


def symmetry_projection_bijection(x, tol: Tolerances = DEFAULT_TOL):
    """Dispatch either direction of the bijection s = 2p - 1, p = (s + 1)/2."""
    if isinstance(x, Projection):
        return projection_to_symmetry(x, tol)
    if isinstance(x, Symmetry):
        return symmetry_to_projection(x, tol)
    raise InvariantViolation(f"expected Projection or Symmetry, got {type(x).__name__}")


def exchange(t, a, tol: Tolerances = DEFAULT_TOL) -> np.ndarray:
    """Conjugation a ↦ tat by a symmetry or partial symmetry."""
    a = symmetrize(a)
    if isinstance(t, PartialSymmetry):
        u = t.support.matrix
        res = frob(a - u @ a @ u)
        if res > tol.recon * max(1.0, frob(a)):
            raise SupportViolation(
                f"element is not supported in the partial symmetry (residual {res})")
        tm = t.matrix
    elif isinstance(t, Symmetry):
        tm = t.matrix
    else:
        tm = symmetrize(t)
    if tm.shape != a.shape:
        raise DimensionMismatch(f"shapes {tm.shape} and {a.shape} differ")
    return symmetrize(tm @ a @ tm)


@dataclass(frozen=True, eq=False)
class EffectProjOrderReport:
    """The six product/order conditions relating an effect e and projection p."""

    e_leq_p: bool
    e_eq_ep: bool
    e_eq_pe: bool
    p_leq_e: bool
    p_eq_pe: bool
    p_eq_ep: bool

    @property
    def lower_cluster_consistent(self) -> bool:
        return self.e_leq_p == self.e_eq_ep == self.e_eq_pe

    @property
    def upper_cluster_consistent(self) -> bool:
        return self.p_leq_e == self.p_eq_pe == self.p_eq_ep


def effect_proj_order_check(e: Effect, p: Projection,
                            tol: Tolerances = DEFAULT_TOL) -> EffectProjOrderReport:
    """Evaluate e <= p ⇔ e = ep ⇔ e = pe and p <= e ⇔ p = pe ⇔ p = ep,
    asserting that each biconditional cluster agrees internally."""
    if e.dim != p.dim:
        raise DimensionMismatch(f"dims {e.dim} and {p.dim} differ")
    em, pm = e.matrix, p.matrix
    prod_tol = tol.recon * max(1.0, spec_norm(em, tol))
    report = EffectProjOrderReport(
        e_leq_p=loewner_cmp(em, pm, tol).leq,
        e_eq_ep=frob(em - em @ pm) <= prod_tol,
        e_eq_pe=frob(em - pm @ em) <= prod_tol,
        p_leq_e=loewner_cmp(pm, em, tol).leq,
        p_eq_pe=frob(pm - pm @ em) <= prod_tol,
        p_eq_ep=frob(pm - em @ pm) <= prod_tol,
    )
    if not (report.lower_cluster_consistent and report.upper_cluster_consistent):
        raise InvariantViolation(f"order/product clusters disagree: {report}")
    return report
