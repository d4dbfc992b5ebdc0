"""Dense symmetric linear algebra kernel.

Everything downstream (order structure, projections, spectral theory)
funnels through the eigensolver implemented here: a cyclic Jacobi
rotation scheme with a fixed sweep order, so results are deterministic
for a fixed input matrix.  Matrices are plain float ndarrays that are
symmetrized at every construction site.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch, DomainError, NonConvergence

__all__ = [
    "Tolerances",
    "DEFAULT_TOL",
    "EigenSystem",
    "SubspaceBasis",
    "symmetrize",
    "frob",
    "eig_sym",
    "eigvals_sym",
    "spec_norm",
    "min_eig",
    "max_eig",
    "range_basis",
    "null_basis",
    "subspace_intersect",
    "apply_spectral_fn",
]

_MAX_SWEEPS = 64
_CONV_EPS = 1e-14


@dataclass(frozen=True)
class Tolerances:
    """Global tolerance policy.

    eig   -- eigenvalue classification cutoff (what counts as zero / rank)
    recon -- reconstruction / algebraic identity residual
    ortho -- orthonormality residual
    psd   -- Loewner order slack
    """

    eig: float = 1e-9
    recon: float = 1e-8
    ortho: float = 1e-10
    psd: float = 1e-9

    def __post_init__(self):
        for name in ("eig", "recon", "ortho", "psd"):
            value = getattr(self, name)
            if not (0.0 < value < 1e-3):
                raise ValueError(f"tolerance {name}={value!r} must lie in (0, 1e-3)")

    def replace(self, **kw) -> "Tolerances":
        merged = {n: getattr(self, n) for n in ("eig", "recon", "ortho", "psd")}
        merged.update(kw)
        return Tolerances(**merged)


DEFAULT_TOL = Tolerances()


def symmetrize(m) -> np.ndarray:
    """Return (M + M^T)/2 as a float array, checking squareness."""
    a = np.asarray(m, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise DimensionMismatch(f"expected a square matrix, got shape {a.shape}")
    return (a + a.T) / 2.0


def frob(m) -> float:
    a = np.asarray(m, dtype=float)
    return math.sqrt(float((a * a).sum()))


def _check_same_dim(a: np.ndarray, b: np.ndarray) -> None:
    if a.shape != b.shape:
        raise DimensionMismatch(f"shapes {a.shape} and {b.shape} differ")


@dataclass(frozen=True, eq=False)
class EigenSystem:
    """Ascending eigenvalues with orthonormal eigenvector columns."""

    values: np.ndarray
    vectors: np.ndarray

    @property
    def dim(self) -> int:
        return len(self.values)

    def reconstruct(self, values=None) -> np.ndarray:
        v = self.values if values is None else np.asarray(values, dtype=float)
        q = self.vectors
        return symmetrize(q @ (v[:, None] * q.T))


def _jacobi(m: np.ndarray, want_vectors: bool):
    """Cyclic Jacobi sweeps; returns (diag values, rotation product or None)."""
    n = m.shape[0]
    a = m.copy()
    v = np.eye(n) if want_vectors else None
    if n == 1:
        return np.array([a[0, 0]]), v
    scale = max(1.0, frob(a))
    target = _CONV_EPS * scale
    for _ in range(_MAX_SWEEPS):
        off = a - np.diag(np.diag(a))
        if frob(off) <= target:
            return np.diag(a).copy(), v
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if abs(apq) <= target / (n * n):
                    continue
                theta = (a[q, q] - a[p, p]) / (2.0 * apq)
                t = math.copysign(1.0, theta) / (abs(theta) + math.sqrt(theta * theta + 1.0))
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c
                rp = a[p, :].copy()
                rq = a[q, :].copy()
                a[p, :] = c * rp - s * rq
                a[q, :] = s * rp + c * rq
                cp = a[:, p].copy()
                cq = a[:, q].copy()
                a[:, p] = c * cp - s * cq
                a[:, q] = s * cp + c * cq
                a[p, q] = 0.0
                a[q, p] = 0.0
                if v is not None:
                    vp = v[:, p].copy()
                    vq = v[:, q].copy()
                    v[:, p] = c * vp - s * vq
                    v[:, q] = s * vp + c * vq
    raise NonConvergence(f"Jacobi sweeps exhausted at dim {n}")


def eig_sym(m, tol: Tolerances = DEFAULT_TOL) -> EigenSystem:
    """Eigendecomposition of a symmetric matrix, deterministic for fixed input."""
    a = symmetrize(m)
    values, vectors = _jacobi(a, want_vectors=True)
    order = np.argsort(values, kind="stable")
    values = values[order]
    vectors = vectors[:, order]
    # fixed sign convention: largest-magnitude entry of each column is positive
    for j in range(vectors.shape[1]):
        col = vectors[:, j]
        k = int(np.argmax(np.abs(col)))
        if col[k] < 0:
            vectors[:, j] = -col
    es = EigenSystem(values=values, vectors=vectors)
    recon = es.reconstruct()
    if frob(recon - a) > tol.recon * max(1.0, frob(a)):
        raise NonConvergence("eigen reconstruction residual above tolerance")
    gram = vectors.T @ vectors
    if frob(gram - np.eye(a.shape[0])) > tol.ortho:
        raise NonConvergence("eigenvector orthonormality residual above tolerance")
    return es


def eigvals_sym(m, tol: Tolerances = DEFAULT_TOL) -> np.ndarray:
    """Eigenvalues only (ascending); cheaper than eig_sym."""
    a = symmetrize(m)
    values, _ = _jacobi(a, want_vectors=False)
    return np.sort(values)


def spec_norm(m, tol: Tolerances = DEFAULT_TOL) -> float:
    """Largest absolute eigenvalue (the order-unit norm in the matrix model)."""
    values = eigvals_sym(m, tol)
    return float(np.max(np.abs(values))) if len(values) else 0.0


def min_eig(m, tol: Tolerances = DEFAULT_TOL) -> float:
    return float(eigvals_sym(m, tol)[0])


def max_eig(m, tol: Tolerances = DEFAULT_TOL) -> float:
    return float(eigvals_sym(m, tol)[-1])


@dataclass(frozen=True, eq=False)
class SubspaceBasis:
    """Orthonormal spanning columns of a subspace (possibly zero columns)."""

    ambient_dim: int
    columns: np.ndarray

    @property
    def dim(self) -> int:
        return self.columns.shape[1]

    def projector(self) -> np.ndarray:
        return symmetrize(self.columns @ self.columns.T)

    @staticmethod
    def empty(ambient_dim: int) -> "SubspaceBasis":
        return SubspaceBasis(ambient_dim, np.zeros((ambient_dim, 0)))


def _rank_cutoff(values: np.ndarray, tol: Tolerances) -> float:
    top = float(np.max(np.abs(values))) if len(values) else 0.0
    return tol.eig * max(1.0, top)


def range_basis(m, tol: Tolerances = DEFAULT_TOL) -> SubspaceBasis:
    """Orthonormal basis of the span of eigenvectors with |eigenvalue| above cutoff."""
    es = eig_sym(m, tol)
    keep = np.abs(es.values) > _rank_cutoff(es.values, tol)
    return SubspaceBasis(es.dim, es.vectors[:, keep])


def null_basis(m, tol: Tolerances = DEFAULT_TOL) -> SubspaceBasis:
    """Orthonormal basis of the numerical kernel (|eigenvalue| within cutoff)."""
    es = eig_sym(m, tol)
    keep = np.abs(es.values) <= _rank_cutoff(es.values, tol)
    return SubspaceBasis(es.dim, es.vectors[:, keep])


def _orthonormalize(cols: np.ndarray) -> np.ndarray:
    """Modified Gram-Schmidt; drops numerically dependent columns."""
    out = []
    for j in range(cols.shape[1]):
        w = cols[:, j].copy()
        for u in out:
            w -= (u @ w) * u
        norm = math.sqrt(float(w @ w))
        if norm > 1e-12:
            out.append(w / norm)
    if not out:
        return np.zeros((cols.shape[0], 0))
    return np.column_stack(out)


def subspace_intersect(u: SubspaceBasis, v: SubspaceBasis,
                       tol: Tolerances = DEFAULT_TOL) -> SubspaceBasis:
    """Orthonormal basis of Ran(u) ∩ Ran(v) via principal vectors.

    Principal cosines are the singular values of U^T V; directions with
    cosine >= 1 - tol.eig are taken as common.
    """
    if u.ambient_dim != v.ambient_dim:
        raise DimensionMismatch(
            f"ambient dims {u.ambient_dim} and {v.ambient_dim} differ")
    n = u.ambient_dim
    if u.dim == 0 or v.dim == 0:
        return SubspaceBasis.empty(n)
    # swap so the Gram eigenproblem is on the smaller side
    if v.dim < u.dim:
        u, v = v, u
    cross = u.columns.T @ v.columns            # (ku, kv), ku <= kv
    gram = symmetrize(cross @ cross.T)         # eigenvalues are cos^2
    es = eig_sym(gram, tol)
    thresh = (1.0 - tol.eig) ** 2
    keep = es.values >= thresh
    if not np.any(keep):
        return SubspaceBasis.empty(n)
    cols = u.columns @ es.vectors[:, keep]
    return SubspaceBasis(n, _orthonormalize(cols))


def apply_spectral_fn(m, f, tol: Tolerances = DEFAULT_TOL) -> np.ndarray:
    """Apply the scalar map f to the spectrum: Q diag(f(λ)) Q^T, symmetrized."""
    es = eig_sym(m, tol)
    mapped = np.empty_like(es.values)
    for i, lam in enumerate(es.values):
        try:
            mapped[i] = f(float(lam))
        except (ValueError, ZeroDivisionError) as exc:
            raise DomainError(f"scalar map undefined at eigenvalue {lam!r}") from exc
    if not np.all(np.isfinite(mapped)):
        raise DomainError("scalar map produced a non-finite value")
    return es.reconstruct(mapped)
