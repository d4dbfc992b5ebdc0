"""Algebra-level structure for direct sums of full real matrix algebras:
membership, commutants, bicommutants, center, factor test, corners, and
closure checking for sub-synaptic subspaces."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import (
    AlgebraMismatch,
    NotInvertible,
    NotProjection,
    UnitMissing,
    ValidationError,
)
from .linalg import (
    DEFAULT_TOL,
    Tolerances,
    eig_sym,
    frob,
    range_basis,
    spec_norm,
    symmetrize,
)
from .order import inverse, sqrt_psd
from .projections import Projection, carrier

__all__ = [
    "AlgebraSpec",
    "Element",
    "LinearSubspaceBasis",
    "CornerAlgebra",
    "commutant",
    "bicommutant",
    "center",
    "FactorVerdict",
    "is_factor",
    "corner",
    "ClosureReport",
    "closure_check",
]


@dataclass(frozen=True)
class AlgebraSpec:
    """A = ⊕_i M_{n_i}(ℝ)^sa, acting block-diagonally on ℝ^{Σ n_i}."""

    blocks: tuple

    def __post_init__(self):
        blocks = tuple(int(b) for b in self.blocks)
        if len(blocks) < 1 or any(b < 1 for b in blocks):
            raise ValidationError(f"blocks {blocks!r} must be a nonempty tuple of positive ints")
        object.__setattr__(self, "blocks", blocks)

    @property
    def total_dim(self) -> int:
        return sum(self.blocks)

    @property
    def num_blocks(self) -> int:
        return len(self.blocks)

    @property
    def linear_dim(self) -> int:
        """Dimension of the symmetric block-diagonal space Σ n_i(n_i+1)/2."""
        return sum(n * (n + 1) // 2 for n in self.blocks)

    def block_slices(self):
        out = []
        start = 0
        for n in self.blocks:
            out.append(slice(start, start + n))
            start += n
        return out

    def identity(self) -> np.ndarray:
        return np.eye(self.total_dim)

    def embed_block(self, x, index: int) -> np.ndarray:
        """Place a block-sized symmetric matrix into the ambient space."""
        sl = self.block_slices()[index]
        out = np.zeros((self.total_dim, self.total_dim))
        out[sl, sl] = symmetrize(x)
        return out

    def block_of(self, m: np.ndarray, index: int) -> np.ndarray:
        sl = self.block_slices()[index]
        return np.asarray(m, dtype=float)[sl, sl]

    def validate_matrix(self, m, tol: Tolerances = DEFAULT_TOL) -> np.ndarray:
        """Symmetry plus block-diagonality within tol.recon."""
        a = np.asarray(m, dtype=float)
        if a.shape != (self.total_dim, self.total_dim):
            raise ValidationError(
                f"matrix shape {a.shape} does not match total dim {self.total_dim}")
        scale = max(1.0, frob(a))
        if frob(a - a.T) > 2.0 * tol.recon * scale:
            raise ValidationError("matrix is asymmetric beyond tolerance")
        a = symmetrize(a)
        mask = np.zeros_like(a, dtype=bool)
        for sl in self.block_slices():
            mask[sl, sl] = True
        off = a[~mask]
        if off.size and float(np.max(np.abs(off))) > tol.recon * scale:
            raise ValidationError("nonzero entries outside the block pattern")
        out = np.zeros_like(a)
        out[mask] = a[mask]
        return out

    def basis(self):
        """Orthonormal basis of A under <x, y> = tr(xy): E_ii and (E_ij+E_ji)/√2."""
        mats = []
        for sl in self.block_slices():
            idx = range(sl.start, sl.stop)
            for i in idx:
                e = np.zeros((self.total_dim, self.total_dim))
                e[i, i] = 1.0
                mats.append(e)
            for i in idx:
                for j in idx:
                    if i < j:
                        e = np.zeros((self.total_dim, self.total_dim))
                        e[i, j] = e[j, i] = 1.0 / math.sqrt(2.0)
                        mats.append(e)
        return mats

    def random_element(self, rng: np.random.Generator, scale: float = 1.0) -> "Element":
        m = np.zeros((self.total_dim, self.total_dim))
        for sl in self.block_slices():
            n = sl.stop - sl.start
            m[sl, sl] = symmetrize(rng.standard_normal((n, n)) * scale)
        return Element(self, m)


@dataclass(frozen=True, eq=False)
class Element:
    """A symmetric block-diagonal matrix regarded as a member of its algebra."""

    algebra: AlgebraSpec
    matrix: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "matrix", self.algebra.validate_matrix(self.matrix))

    @property
    def dim(self) -> int:
        return self.algebra.total_dim

    def block(self, index: int) -> np.ndarray:
        return self.algebra.block_of(self.matrix, index)

    def blocks_iter(self):
        for i in range(self.algebra.num_blocks):
            yield self.block(i)

    @staticmethod
    def from_blocks(algebra: AlgebraSpec, blocks) -> "Element":
        m = np.zeros((algebra.total_dim, algebra.total_dim))
        for sl, x in zip(algebra.block_slices(), blocks):
            m[sl, sl] = symmetrize(x)
        return Element(algebra, m)


def _require_same_algebra(elements) -> AlgebraSpec:
    specs = {e.algebra for e in elements}
    if len(specs) != 1:
        raise AlgebraMismatch("elements belong to different algebras")
    return next(iter(specs))


def _vec(algebra: AlgebraSpec, basis, m: np.ndarray) -> np.ndarray:
    return np.array([float(np.sum(b * m)) for b in basis])


@dataclass(frozen=True, eq=False)
class LinearSubspaceBasis:
    """Orthonormal (trace inner product) basis of a linear subspace of A."""

    algebra: AlgebraSpec
    elements: tuple = field(default_factory=tuple)

    @property
    def dim(self) -> int:
        return len(self.elements)

    def coefficients(self, m) -> np.ndarray:
        m = np.asarray(m, dtype=float)
        return np.array([float(np.sum(b * m)) for b in self.elements])

    def project(self, m) -> np.ndarray:
        coeff = self.coefficients(m)
        out = np.zeros((self.algebra.total_dim, self.algebra.total_dim))
        for c, b in zip(coeff, self.elements):
            out += c * b
        return out

    def membership_residual(self, m) -> float:
        m = np.asarray(m, dtype=float)
        return frob(m - self.project(m))

    def contains(self, m, tol: Tolerances = DEFAULT_TOL) -> bool:
        m = np.asarray(m, dtype=float)
        return self.membership_residual(m) <= tol.recon * max(1.0, frob(m))


def commutant(algebra: AlgebraSpec, members, tol: Tolerances = DEFAULT_TOL) -> LinearSubspaceBasis:
    """C(M): null space of x ↦ (xm - mx)_{m in M} over the symmetric
    block-diagonal coordinates of A."""
    members = [np.asarray(m, dtype=float) for m in members]
    for m in members:
        algebra.validate_matrix(m, tol)
    basis = algebra.basis()
    if not members:
        return LinearSubspaceBasis(algebra, tuple(basis))
    columns = []
    for b in basis:
        col = np.concatenate([(b @ m - m @ b).ravel() for m in members])
        columns.append(col)
    c = np.column_stack(columns)
    gram = symmetrize(c.T @ c)
    es = eig_sym(gram, tol)
    top = float(es.values[-1]) if es.dim else 0.0
    cutoff = tol.eig * max(1.0, top)
    null_vectors = es.vectors[:, es.values <= cutoff]
    out = []
    for j in range(null_vectors.shape[1]):
        m = np.zeros((algebra.total_dim, algebra.total_dim))
        for coeff, b in zip(null_vectors[:, j], basis):
            m += coeff * b
        out.append(symmetrize(m))
    return LinearSubspaceBasis(algebra, tuple(out))


def bicommutant(algebra: AlgebraSpec, members, tol: Tolerances = DEFAULT_TOL) -> LinearSubspaceBasis:
    """CC(M) = C(C(M))."""
    first = commutant(algebra, members, tol)
    return commutant(algebra, first.elements, tol)


def center(algebra: AlgebraSpec, tol: Tolerances = DEFAULT_TOL) -> LinearSubspaceBasis:
    """C(A): commutant of a spanning set of the whole algebra."""
    return commutant(algebra, algebra.basis(), tol)


@dataclass(frozen=True, eq=False)
class FactorVerdict:
    is_factor: bool
    center_dim: int
    witness: np.ndarray | None  # central projection outside {0, 1} when not a factor

    def __bool__(self) -> bool:
        return self.is_factor


def is_factor(algebra: AlgebraSpec, tol: Tolerances = DEFAULT_TOL) -> FactorVerdict:
    """Factor iff the center is one-dimensional (scalars only).

    A non-factor direct sum yields the first block indicator as a central
    projection witness strictly between 0 and 1."""
    dim = center(algebra, tol).dim
    if dim == 1:
        return FactorVerdict(is_factor=True, center_dim=1, witness=None)
    first = algebra.block_slices()[0]
    witness = np.zeros((algebra.total_dim, algebra.total_dim))
    witness[first, first] = np.eye(first.stop - first.start)
    return FactorVerdict(is_factor=False, center_dim=dim, witness=witness)


@dataclass(frozen=True, eq=False)
class CornerAlgebra:
    """The compression pAp, coordinatized on an orthonormal basis of Ran p."""

    parent: AlgebraSpec
    unit: Projection
    basis: np.ndarray          # total_dim x rank, block-structured columns
    spec: AlgebraSpec          # per-block compressed ranks (zero blocks dropped)

    @property
    def rank(self) -> int:
        return self.basis.shape[1]

    def compress(self, m) -> np.ndarray:
        m = np.asarray(m, dtype=float)
        return symmetrize(self.basis.T @ m @ self.basis)

    def lift(self, x) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        return symmetrize(self.basis @ x @ self.basis.T)


def corner(algebra: AlgebraSpec, p: Projection, tol: Tolerances = DEFAULT_TOL) -> CornerAlgebra:
    """Build pAp with p as its unit, compressing blockwise."""
    try:
        algebra.validate_matrix(p.matrix, tol)
    except ValidationError as exc:
        raise NotProjection(f"projection does not live in the algebra: {exc}") from exc
    if p.rank == 0:
        raise NotProjection("corner by the zero projection is empty")
    columns = []
    ranks = []
    for i in range(algebra.num_blocks):
        block = algebra.block_of(p.matrix, i)
        sub = range_basis(block, tol)
        if sub.dim == 0:
            continue
        ranks.append(sub.dim)
        sl = algebra.block_slices()[i]
        lifted = np.zeros((algebra.total_dim, sub.dim))
        lifted[sl, :] = sub.columns
        columns.append(lifted)
    basis = np.concatenate(columns, axis=1)
    return CornerAlgebra(parent=algebra, unit=p, basis=basis, spec=AlgebraSpec(tuple(ranks)))


@dataclass(frozen=True)
class ClosureCheck:
    name: str
    passed: bool
    worst_residual: float
    samples: int


@dataclass(frozen=True)
class ClosureReport:
    checks: tuple

    @property
    def all_passed(self) -> bool:
        return all(c.passed for c in self.checks)


def closure_check(v: LinearSubspaceBasis, tol: Tolerances = DEFAULT_TOL,
                  seed: int = 0, samples: int = 20) -> ClosureReport:
    """Sampled closure of a unital subspace under squares, square roots of
    PSD members, carriers, and inverses of invertible members."""
    algebra = v.algebra
    unit = algebra.identity()
    if not v.contains(unit, tol):
        raise UnitMissing("the unit is not a member of the subspace")
    rng = np.random.default_rng(seed)
    results = {name: [0, 0.0] for name in ("squares", "square_roots", "carriers", "inverses")}

    def record(name, member):
        res = v.membership_residual(member) / max(1.0, frob(member))
        results[name][0] += 1
        results[name][1] = max(results[name][1], res)

    for _ in range(samples):
        coeff = rng.standard_normal(v.dim)
        x = np.zeros_like(unit)
        for c, b in zip(coeff, v.elements):
            x += c * b
        x = symmetrize(x)
        record("squares", x @ x)
        shift = spec_norm(x, tol) + 1.0
        y = x + shift * unit  # strictly positive and still in V
        record("square_roots", sqrt_psd(y, tol))
        record("carriers", carrier(x, tol).matrix)
        try:
            record("inverses", inverse(y, tol))
        except NotInvertible:
            pass
    checks = tuple(
        ClosureCheck(name=name, passed=worst <= tol.recon * 10.0,
                     worst_residual=worst, samples=count)
        for name, (count, worst) in results.items()
    )
    return ClosureReport(checks=checks)
