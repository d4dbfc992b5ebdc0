"""Spectral resolutions, spectrum, spectral bounds, and subprojection
extraction for positive elements."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import NotStrictlyPositive
from .linalg import DEFAULT_TOL, Tolerances, eig_sym, frob, symmetrize
from .order import commutator_residual, loewner_cmp
from .projections import Projection, carrier

__all__ = [
    "SpectralBounds",
    "SpectralResolution",
    "spectral_bounds",
    "spectral_resolution",
    "q_lambda",
    "spectrum",
    "find_subprojection",
    "SubprojectionResult",
    "q_lambda_clause_report",
]


@dataclass(frozen=True)
class SpectralBounds:
    lower: float
    upper: float

    @property
    def norm(self) -> float:
        return max(abs(self.lower), abs(self.upper))


def spectral_bounds(a, tol: Tolerances = DEFAULT_TOL) -> SpectralBounds:
    """L = sup{λ : λ <= a}, U = inf{λ : a <= λ}: the extreme eigenvalues."""
    es = eig_sym(a, tol)
    return SpectralBounds(lower=float(es.values[0]), upper=float(es.values[-1]))


def _clusters(values: np.ndarray, tol: Tolerances):
    """Group ascending eigenvalues whose gaps are within 2*tol.eig.

    Returns a list of (representative, member index list)."""
    groups = []
    current = [0]
    for i in range(1, len(values)):
        if values[i] - values[current[-1]] <= 2.0 * tol.eig:
            current.append(i)
        else:
            groups.append(current)
            current = [i]
    groups.append(current)
    return [(float(np.mean(values[g])), g) for g in groups]


@dataclass(frozen=True, eq=False)
class SpectralResolution:
    """Right-continuous step family λ ↦ p_λ stored as a finite jump list.

    jumps[i] = (λ_i, cumulative projection onto eigenspaces with
    eigenvalue <= λ_i); the last projection is the identity."""

    element: np.ndarray
    jumps: tuple

    @property
    def dim(self) -> int:
        return self.element.shape[0]

    def projection_at(self, lam: float) -> Projection:
        out = Projection.zero(self.dim)
        for jump_lam, proj in self.jumps:
            if jump_lam <= lam:
                out = proj
            else:
                break
        return out

    def jump_locations(self):
        return [lam for lam, _ in self.jumps]


def spectral_resolution(a, tol: Tolerances = DEFAULT_TOL) -> SpectralResolution:
    a = symmetrize(a)
    es = eig_sym(a, tol)
    jumps = []
    cumulative = np.zeros((es.dim, es.dim))
    count = 0
    for rep, members in _clusters(es.values, tol):
        block = es.vectors[:, members]
        cumulative = symmetrize(cumulative + block @ block.T)
        count += len(members)
        jumps.append((rep, Projection(matrix=cumulative.copy(), rank=count)))
    return SpectralResolution(element=a, jumps=tuple(jumps))


def spectrum(a, tol: Tolerances = DEFAULT_TOL):
    """Jump locations of the spectral resolution (clustered eigenvalues)."""
    return spectral_resolution(a, tol).jump_locations()


def _require_strictly_positive(es, tol: Tolerances) -> float:
    """Validate 0 < a from its eigensystem; returns the norm."""
    lo = float(es.values[0])
    top = float(np.max(np.abs(es.values)))
    if lo < -tol.psd * max(1.0, top):
        raise NotStrictlyPositive(f"eigenvalue {lo} below the PSD slack")
    if top <= tol.eig:
        raise NotStrictlyPositive("element is numerically zero")
    return top


def q_lambda(a, lam: float, tol: Tolerances = DEFAULT_TOL) -> Projection:
    """q_λ = 1 - p_λ: projector onto eigenspaces with eigenvalue > λ.

    Requires 0 < a.  Eigenvalues within the rank cutoff of 0 are treated
    as exactly 0, so q_0 agrees with the carrier."""
    es = eig_sym(a, tol)
    top = _require_strictly_positive(es, tol)
    cutoff = tol.eig * max(1.0, top)
    snapped = np.where(np.abs(es.values) <= cutoff, 0.0, es.values)
    keep = snapped > lam
    cols = es.vectors[:, keep]
    return Projection(matrix=symmetrize(cols @ cols.T), rank=int(keep.sum()))


@dataclass(frozen=True, eq=False)
class SubprojectionResult:
    lam: float
    projection: Projection


def find_subprojection(a, tol: Tolerances = DEFAULT_TOL) -> SubprojectionResult:
    """For 0 < a produce λ > 0 and a nonzero projection p with λp <= a.

    λ is fixed at ‖a‖/2, the midpoint of the admissible interval (0, ‖a‖)."""
    es = eig_sym(a, tol)
    norm = _require_strictly_positive(es, tol)
    lam = norm / 2.0
    return SubprojectionResult(lam=lam, projection=q_lambda(a, lam, tol))


def q_lambda_clause_report(a, tol: Tolerances = DEFAULT_TOL, interior_samples=(0.25, 0.5, 0.75)):
    """Check the five clauses governing q_λ for 0 < a, plus the bracketing
    inequality (1-q_λ)(a-λ) <= 0 <= q_λ(a-λ) at interior λ.

    Returns a list of (name, passed, residual) triples."""
    a = symmetrize(a)
    es = eig_sym(a, tol)
    norm = _require_strictly_positive(es, tol)
    n = a.shape[0]
    checks = []

    def add(name, passed, residual):
        checks.append((name, bool(passed), float(residual)))

    # (ii) λ < 0 => q_λ = 1
    q_neg = q_lambda(a, -1.0, tol)
    add("negative_lambda_gives_identity", q_neg.is_identity(),
        frob(q_neg.matrix - np.eye(n)))

    # (iii) q_0 = carrier(a) != 0
    q0 = q_lambda(a, 0.0, tol)
    car = carrier(a, tol)
    add("q0_equals_carrier", frob(q0.matrix - car.matrix) <= tol.recon,
        frob(q0.matrix - car.matrix))
    add("q0_nonzero", not q0.is_zero(), float(q0.rank))

    scale = tol.psd * max(1.0, norm)
    for frac in interior_samples:
        lam = frac * norm
        q = q_lambda(a, lam, tol)
        tag = f"lambda={frac:g}*norm"
        # (i) q_λ commutes with a
        add(f"commutes[{tag}]",
            commutator_residual(q.matrix, a) <= tol.recon * max(1.0, norm),
            commutator_residual(q.matrix, a))
        # (iv) q_λ != 0 and λ q_λ <= q_λ a = a q_λ <= a
        add(f"nonzero[{tag}]", not q.is_zero(), float(q.rank))
        qa = symmetrize(q.matrix @ a)
        lower = loewner_cmp(lam * q.matrix, qa, tol)
        upper = loewner_cmp(qa, a, tol)
        add(f"lambda_q_leq_qa[{tag}]", lower.slack >= -scale, lower.slack)
        add(f"qa_leq_a[{tag}]", upper.slack >= -scale, upper.slack)
        # bracketing inequality around λ
        shifted = a - lam * np.eye(n)
        left = symmetrize((np.eye(n) - q.matrix) @ shifted)
        right = symmetrize(q.matrix @ shifted)
        left_v = loewner_cmp(left, np.zeros_like(left), tol)
        right_v = loewner_cmp(np.zeros_like(right), right, tol)
        add(f"complement_side_nonpositive[{tag}]", left_v.leq, left_v.slack)
        add(f"q_side_nonnegative[{tag}]", right_v.leq, right_v.slack)

    # (v) λ >= ‖a‖ => q_λ = 0
    for lam in (norm, 1.5 * norm):
        q = q_lambda(a, lam, tol)
        add(f"at_or_above_norm_gives_zero[lambda={lam:g}]", q.is_zero(),
            float(q.rank))

    return checks
