"""Seeded random generators used by the falsification suites and tests.

Everything is driven by numpy Generator instances so a fixed seed gives a
fixed stream regardless of call site ordering elsewhere."""

from __future__ import annotations

import numpy as np

from .linalg import DEFAULT_TOL, Tolerances, eig_sym, eigvals_sym, symmetrize
from .projections import Projection

__all__ = [
    "random_symmetric",
    "random_orthogonal",
    "random_psd",
    "random_positive",
    "random_projection",
    "random_effect",
    "traceless_perturbation",
]


def random_symmetric(rng: np.random.Generator, n: int, scale: float = 1.0) -> np.ndarray:
    return symmetrize(rng.standard_normal((n, n)) * scale)


def random_orthogonal(rng: np.random.Generator, n: int,
                      tol: Tolerances = DEFAULT_TOL) -> np.ndarray:
    """Orthogonal matrix as the eigenbasis of a random symmetric matrix."""
    return eig_sym(random_symmetric(rng, n), tol).vectors


def random_psd(rng: np.random.Generator, n: int, scale: float = 1.0) -> np.ndarray:
    g = rng.standard_normal((n, n)) * scale
    return symmetrize(g @ g.T)


def random_positive(rng: np.random.Generator, n: int,
                    tol: Tolerances = DEFAULT_TOL) -> np.ndarray:
    """Strictly positive matrix: random PSD pushed off the boundary."""
    return random_psd(rng, n) + (0.05 + rng.random()) * np.eye(n)


def random_projection(rng: np.random.Generator, n: int, rank: int | None = None,
                      tol: Tolerances = DEFAULT_TOL) -> Projection:
    if rank is None:
        rank = int(rng.integers(0, n + 1))
    basis = random_orthogonal(rng, n, tol)[:, :rank]
    return Projection(matrix=symmetrize(basis @ basis.T), rank=rank)


def random_effect(rng: np.random.Generator, n: int) -> np.ndarray:
    """Random effect: PSD matrix rescaled into [0, 1]."""
    m = random_psd(rng, n)
    top = float(np.max(np.abs(eigvals_sym(m)))) if n else 0.0
    if top <= 0.0:
        return m
    return m * (rng.random() / top)


def traceless_perturbation(rng: np.random.Generator, n: int,
                           scale: float = 1.0) -> np.ndarray:
    d = random_symmetric(rng, n, scale)
    return d - (np.trace(d) / n) * np.eye(n)
