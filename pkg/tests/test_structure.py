import numpy as np
import pytest

from synlab.errors import NotProjection, UnitMissing, ValidationError
from synlab.linalg import frob, symmetrize
from synlab.order import commutes, loewner_cmp
from synlab.projections import Projection
from synlab.structure import (
    AlgebraSpec,
    Element,
    bicommutant,
    center,
    closure_check,
    commutant,
    corner,
    is_factor,
)


def test_algebra_spec_basics():
    spec = AlgebraSpec((2, 3))
    assert spec.total_dim == 5
    assert spec.num_blocks == 2
    assert spec.linear_dim == 3 + 6
    assert [s.start for s in spec.block_slices()] == [0, 2]
    with pytest.raises(ValidationError):
        AlgebraSpec(())
    with pytest.raises(ValidationError):
        AlgebraSpec((2, 0))


def test_validate_matrix(tol):
    spec = AlgebraSpec((2, 1))
    good = np.diag([1.0, 2.0, 3.0])
    assert np.allclose(spec.validate_matrix(good, tol), good)
    bad = np.zeros((3, 3))
    bad[0, 2] = bad[2, 0] = 1.0  # couples the two blocks
    with pytest.raises(ValidationError):
        spec.validate_matrix(bad, tol)
    with pytest.raises(ValidationError):
        spec.validate_matrix(np.array([[0.0, 1.0], [0.0, 0.0]]), tol)
    with pytest.raises(ValidationError):
        spec.validate_matrix(np.eye(4), tol)


def test_basis_is_orthonormal(tol):
    spec = AlgebraSpec((2, 3))
    basis = spec.basis()
    assert len(basis) == spec.linear_dim
    for i, a in enumerate(basis):
        for j, b in enumerate(basis):
            inner = float(np.sum(a * b))
            assert inner == pytest.approx(1.0 if i == j else 0.0, abs=1e-12)


def test_element_round_trip(tol):
    spec = AlgebraSpec((2, 2))
    rng = np.random.default_rng(301)
    e = spec.random_element(rng)
    rebuilt = Element.from_blocks(spec, list(e.blocks_iter()))
    assert frob(rebuilt.matrix - e.matrix) <= tol.recon


def test_commutant_examples(tol):
    spec = AlgebraSpec((2,))
    # commutant of nothing is everything
    assert commutant(spec, [], tol).dim == 3
    # commutant of a rank-one diagonal projection: the diagonal matrices
    assert commutant(spec, [np.diag([1.0, 0.0])], tol).dim == 2
    # commutant of a spanning set: scalars only
    assert commutant(spec, spec.basis(), tol).dim == 1


def test_commutant_members_commute(tol):
    for i in range(30):
        rng = np.random.default_rng([307, i])
        spec = AlgebraSpec(tuple(int(rng.integers(1, 4)) for _ in range(int(rng.integers(1, 3)))))
        members = [spec.random_element(rng).matrix for _ in range(2)]
        com = commutant(spec, members, tol)
        for b in com.elements:
            for m in members:
                assert commutes(b, m, tol)
        # the original members sit inside the bicommutant
        bicom = bicommutant(spec, members, tol)
        for m in members:
            assert bicom.contains(m, tol)


def test_center_dimensions(tol):
    assert center(AlgebraSpec((3,)), tol).dim == 1
    assert center(AlgebraSpec((1,)), tol).dim == 1
    assert center(AlgebraSpec((2, 3)), tol).dim == 2
    assert center(AlgebraSpec((1, 1, 1)), tol).dim == 3


def test_center_elements_are_block_scalars(tol):
    spec = AlgebraSpec((2, 3))
    for z in center(spec, tol).elements:
        for i, block in enumerate([spec.block_of(z, j) for j in range(2)]):
            n = block.shape[0]
            assert frob(block - block[0, 0] * np.eye(n)) <= 1e-9


def test_is_factor(tol):
    for blocks, expect in [((1,), True), ((2,), True), ((4,), True),
                           ((1, 1), False), ((2, 3), False), ((1, 2, 3), False)]:
        verdict = is_factor(AlgebraSpec(blocks), tol)
        assert bool(verdict) is expect
        if expect:
            assert verdict.center_dim == 1 and verdict.witness is None
        else:
            assert verdict.center_dim == len(blocks)
            w = verdict.witness
            # witness is a central projection strictly between 0 and 1
            assert frob(w @ w - w) <= 1e-12
            assert 0 < int(round(np.trace(w))) < sum(blocks)
            spec = AlgebraSpec(blocks)
            for b in spec.basis():
                assert commutes(w, b, tol)


def test_corner_full_unit(tol):
    spec = AlgebraSpec((2, 2))
    cor = corner(spec, Projection.identity(4), tol)
    assert cor.rank == 4
    assert cor.spec.blocks == (2, 2)
    rng = np.random.default_rng(311)
    m = spec.random_element(rng).matrix
    assert frob(cor.lift(cor.compress(m)) - m) <= tol.recon * max(1.0, frob(m))


def test_corner_examples(tol):
    spec = AlgebraSpec((3,))
    p = Projection.from_matrix(np.diag([1.0, 1.0, 0.0]), tol)
    cor = corner(spec, p, tol)
    assert cor.rank == 2
    assert cor.spec.blocks == (2,)
    m = np.arange(9, dtype=float).reshape(3, 3)
    m = symmetrize(m)
    compressed = cor.compress(m)
    # lifting lands back under p
    lifted = cor.lift(compressed)
    assert frob(p.matrix @ lifted @ p.matrix - lifted) <= tol.recon * max(1.0, frob(lifted))
    # the compressed unit is the identity of the corner
    assert frob(cor.compress(p.matrix) - np.eye(2)) <= tol.recon

    with pytest.raises(NotProjection):
        corner(spec, Projection.zero(3), tol)


def test_corner_drops_empty_blocks(tol):
    spec = AlgebraSpec((2, 2))
    p = Projection.from_matrix(np.diag([1.0, 0.0, 0.0, 0.0]), tol)
    cor = corner(spec, p, tol)
    assert cor.spec.blocks == (1,)
    assert cor.rank == 1


def test_corner_preserves_order_and_products(tol):
    for i in range(30):
        rng = np.random.default_rng([313, i])
        spec = AlgebraSpec((int(rng.integers(2, 5)),))
        n = spec.total_dim
        k = int(rng.integers(1, n))
        from synlab.sampling import random_projection
        p = random_projection(rng, n, k)
        cor = corner(spec, p, tol)
        a = spec.random_element(rng).matrix
        b = a + spec.random_element(rng).matrix @ spec.random_element(rng).matrix.T
        b = symmetrize(a + np.eye(n))  # a <= b
        ca, cb = cor.compress(a), cor.compress(b)
        assert loewner_cmp(ca, cb, tol).leq
        # compression of pxp multiplies correctly: (pap)(pbp) compressed
        pap = symmetrize(p.matrix @ a @ p.matrix)
        pbp = symmetrize(p.matrix @ b @ p.matrix)
        assert frob(cor.compress(pap) @ cor.compress(pbp)
                    - cor.compress(symmetrize(pap @ pbp))) <= 1e-8 * max(1.0, frob(a) * frob(b))


def test_closure_check_passes_for_commutant(tol):
    spec = AlgebraSpec((3,))
    v = commutant(spec, [np.diag([1.0, 1.0, 0.0])], tol)
    report = closure_check(v, tol, seed=5)
    assert report.all_passed
    names = {c.name for c in report.checks}
    assert names == {"squares", "square_roots", "carriers", "inverses"}


def test_closure_check_fails_for_non_subalgebra(tol):
    # span{1, E12 + E21} in M3 is unital but not closed under squaring:
    # (E12 + E21)² = diag(1, 1, 0) escapes the span
    spec = AlgebraSpec((3,))
    one = np.eye(3) / np.sqrt(3.0)
    x = np.zeros((3, 3))
    x[0, 1] = x[1, 0] = 1.0 / np.sqrt(2.0)
    from synlab.structure import LinearSubspaceBasis

    v = LinearSubspaceBasis(spec, (one, x))
    report = closure_check(v, tol, seed=5)
    assert not report.all_passed


def test_closure_check_requires_unit(tol):
    spec = AlgebraSpec((2,))
    from synlab.structure import LinearSubspaceBasis

    v = LinearSubspaceBasis(spec, (np.diag([1.0, 0.0]),))
    with pytest.raises(UnitMissing):
        closure_check(v, tol)
