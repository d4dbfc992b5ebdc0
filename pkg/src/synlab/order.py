"""Order-unit / Jordan structure: Loewner order, norms, Jordan and quadratic
products, square roots, absolute values, generalized infima, inverses."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch, NotInvertible, NotPositive
from .linalg import (
    DEFAULT_TOL,
    Tolerances,
    eig_sym,
    eigvals_sym,
    frob,
    spec_norm,
    symmetrize,
)

__all__ = [
    "OrderVerdict",
    "loewner_cmp",
    "is_psd",
    "orderunit_norm",
    "jordan_product",
    "quadratic_map",
    "sqrt_psd",
    "abs_and_parts",
    "gen_infimum",
    "inverse",
    "commutes",
    "commutator_residual",
]


@dataclass(frozen=True)
class OrderVerdict:
    """Outcome of a Loewner comparison of a against b.

    slack is the most negative eigenvalue of b - a (how far a <= b fails);
    slack_rev the same for a - b.
    """

    leq: bool
    geq: bool
    slack: float
    slack_rev: float

    @property
    def comparable(self) -> bool:
        return self.leq or self.geq

    @property
    def incomparable(self) -> bool:
        return not self.comparable


def loewner_cmp(a, b, tol: Tolerances = DEFAULT_TOL) -> OrderVerdict:
    """Compare a and b in the Loewner order with relative PSD slack."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    if a.shape != b.shape:
        raise DimensionMismatch(f"shapes {a.shape} and {b.shape} differ")
    diff = symmetrize(b - a)
    values = eigvals_sym(diff, tol)
    lo, hi = float(values[0]), float(values[-1])
    slack_scale = tol.psd * max(1.0, abs(lo), abs(hi))
    return OrderVerdict(
        leq=lo >= -slack_scale,
        geq=hi <= slack_scale,
        slack=lo,
        slack_rev=-hi,
    )


def is_psd(a, tol: Tolerances = DEFAULT_TOL) -> bool:
    """Membership in the positive cone, with relative slack."""
    values = eigvals_sym(a, tol)
    lo, hi = float(values[0]), float(values[-1])
    return lo >= -tol.psd * max(1.0, abs(lo), abs(hi))


def orderunit_norm(a, tol: Tolerances = DEFAULT_TOL) -> float:
    """inf{λ>0 : -λ1 <= a <= λ1} = largest absolute eigenvalue."""
    return spec_norm(a, tol)


def jordan_product(a, b) -> np.ndarray:
    """a ⊙ b = (ab + ba)/2."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    if a.shape != b.shape:
        raise DimensionMismatch(f"shapes {a.shape} and {b.shape} differ")
    return symmetrize(a @ b + b @ a) / 2.0


def quadratic_map(a, b) -> np.ndarray:
    """The compression b ↦ aba (computed in the enveloping algebra)."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    if a.shape != b.shape:
        raise DimensionMismatch(f"shapes {a.shape} and {b.shape} differ")
    return symmetrize(a @ b @ a)


def sqrt_psd(a, tol: Tolerances = DEFAULT_TOL) -> np.ndarray:
    """The unique PSD square root; eigenvalues within PSD slack are clamped to 0."""
    es = eig_sym(a, tol)
    lo = float(es.values[0])
    scale = max(1.0, float(np.max(np.abs(es.values))) if es.dim else 1.0)
    if lo < -tol.psd * scale:
        raise NotPositive(f"matrix has eigenvalue {lo} below -psd slack")
    clamped = np.clip(es.values, 0.0, None)
    return es.reconstruct(np.sqrt(clamped))


def abs_and_parts(a, tol: Tolerances = DEFAULT_TOL):
    """(|a|, a+, a-) from one eigendecomposition, so the decomposition
    identities a = a+ - a-, |a| = a+ + a-, a+ a- = 0 hold to machine precision."""
    es = eig_sym(a, tol)
    absolute = es.reconstruct(np.abs(es.values))
    pos = es.reconstruct(np.clip(es.values, 0.0, None))
    neg = es.reconstruct(np.clip(-es.values, 0.0, None))
    return absolute, pos, neg


def gen_infimum(a, b, tol: Tolerances = DEFAULT_TOL) -> np.ndarray:
    """Generalized infimum a⊓b = (a + b - |a-b|)/2; a lower bound of both."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    if a.shape != b.shape:
        raise DimensionMismatch(f"shapes {a.shape} and {b.shape} differ")
    absolute, _, _ = abs_and_parts(a - b, tol)
    return symmetrize(a + b - absolute) / 2.0


def inverse(a, tol: Tolerances = DEFAULT_TOL) -> np.ndarray:
    """Inverse via the spectrum; requires ε <= |a| for some ε above the cutoff."""
    es = eig_sym(a, tol)
    smallest = float(np.min(np.abs(es.values)))
    largest = float(np.max(np.abs(es.values)))
    if smallest <= tol.eig * max(1.0, largest):
        raise NotInvertible(f"smallest |eigenvalue| {smallest} is within cutoff")
    return es.reconstruct(1.0 / es.values)


def commutator_residual(a, b) -> float:
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    if a.shape != b.shape:
        raise DimensionMismatch(f"shapes {a.shape} and {b.shape} differ")
    return frob(a @ b - b @ a)


def commutes(a, b, tol: Tolerances = DEFAULT_TOL) -> bool:
    """aCb: ab = ba within a residual relative to ‖a‖‖b‖."""
    res = commutator_residual(a, b)
    scale = max(1.0, spec_norm(a, tol) * spec_norm(b, tol))
    return res <= tol.recon * scale
