import numpy as np
import pytest

from synlab.linalg import DEFAULT_TOL, symmetrize
from synlab.projections import Projection


@pytest.fixture
def tol():
    return DEFAULT_TOL


def projection_from_pattern(basis: np.ndarray, pattern) -> Projection:
    """Projection diagonal in the given orthonormal basis with 0/1 pattern."""
    pattern = np.asarray(pattern, dtype=float)
    cols = basis[:, pattern > 0.5]
    return Projection(matrix=symmetrize(cols @ cols.T), rank=int(pattern.sum()))
