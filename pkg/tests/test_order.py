import numpy as np
import pytest

from synlab.errors import DimensionMismatch, NotInvertible, NotPositive
from synlab.linalg import frob, symmetrize
from synlab.order import (
    abs_and_parts,
    commutes,
    gen_infimum,
    inverse,
    jordan_product,
    loewner_cmp,
    orderunit_norm,
    quadratic_map,
    sqrt_psd,
)
from synlab.sampling import random_orthogonal, random_psd, random_symmetric
from synlab.spectral import spectral_bounds


def test_loewner_examples(tol):
    a = random_symmetric(np.random.default_rng(0), 3)
    v = loewner_cmp(a, a, tol)
    assert v.leq and v.geq

    v = loewner_cmp(np.diag([1.0, 0.0]), np.diag([0.0, 1.0]), tol)
    assert v.incomparable

    v = loewner_cmp(np.zeros((2, 2)), np.eye(2), tol)
    assert v.leq and not v.geq


def test_loewner_dimension_mismatch(tol):
    with pytest.raises(DimensionMismatch):
        loewner_cmp(np.eye(2), np.eye(3), tol)


def test_orderunit_norm():
    assert orderunit_norm(np.diag([2.0, -3.0])) == pytest.approx(3.0)
    assert orderunit_norm(np.eye(4)) == pytest.approx(1.0)
    assert orderunit_norm([[0.0, 2.0], [2.0, 0.0]]) == pytest.approx(2.0)


def test_norm_equals_spectral_bounds(tol):
    for i in range(200):
        rng = np.random.default_rng([29, i])
        a = random_symmetric(rng, int(rng.integers(2, 8)))
        bounds = spectral_bounds(a, tol)
        assert orderunit_norm(a, tol) == pytest.approx(bounds.norm, abs=1e-10)


def test_jordan_product(tol):
    rng = np.random.default_rng(31)
    a = random_symmetric(rng, 4)
    one = np.eye(4)
    assert frob(jordan_product(a, one) - a) <= tol.recon
    assert frob(jordan_product(a, a) - a @ a) <= tol.recon
    assert np.allclose(jordan_product(np.diag([1.0, 2.0]), np.diag([3.0, 4.0])),
                       np.diag([3.0, 8.0]))
    # polarization form
    b = random_symmetric(rng, 4)
    poly = ((a + b) @ (a + b) - a @ a - b @ b) / 2.0
    assert frob(jordan_product(a, b) - symmetrize(poly)) <= tol.recon


def test_quadratic_map(tol):
    rng = np.random.default_rng(37)
    b = random_symmetric(rng, 3)
    assert frob(quadratic_map(np.eye(3), b) - b) <= tol.recon

    p = np.diag([1.0, 0.0])
    assert frob(quadratic_map(p, np.eye(2)) - p) <= tol.recon

    a = np.array([[0.0, 1.0], [1.0, 0.0]])
    assert np.allclose(quadratic_map(a, np.diag([1.0, 0.0])), np.diag([0.0, 1.0]))

    # Jordan-only identity aba = a⊙c - a²⊙b with c = 2(a⊙b)
    a = random_symmetric(rng, 4)
    b = random_symmetric(rng, 4)
    c = 2.0 * jordan_product(a, b)
    alt = jordan_product(a, c) - jordan_product(a @ a, b)
    assert frob(quadratic_map(a, b) - alt) <= tol.recon * max(1.0, frob(alt))


def test_quadratic_map_order_preserving(tol):
    for i in range(200):
        rng = np.random.default_rng([41, i])
        n = int(rng.integers(2, 7))
        a = random_symmetric(rng, n)
        x = random_symmetric(rng, n)
        y = x + random_psd(rng, n)
        axa = quadratic_map(a, x)
        aya = quadratic_map(a, y)
        assert loewner_cmp(axa, aya, tol).leq


def test_sqrt(tol):
    assert np.allclose(sqrt_psd(np.diag([4.0, 9.0]), tol), np.diag([2.0, 3.0]))
    assert np.allclose(sqrt_psd(np.eye(3), tol), np.eye(3))
    for i in range(50):
        rng = np.random.default_rng([43, i])
        a = random_psd(rng, int(rng.integers(2, 7)))
        r = sqrt_psd(a, tol)
        assert frob(r @ r - a) <= tol.recon * max(1.0, frob(a))
        assert commutes(r, a, tol)
    with pytest.raises(NotPositive):
        sqrt_psd(np.diag([1.0, -1.0]), tol)


def test_abs_and_parts(tol):
    absolute, pos, neg = abs_and_parts(np.diag([2.0, -3.0]), tol)
    assert np.allclose(absolute, np.diag([2.0, 3.0]))
    assert np.allclose(pos, np.diag([2.0, 0.0]))
    assert np.allclose(neg, np.diag([0.0, 3.0]))

    a = random_psd(np.random.default_rng(47), 4)
    absolute, pos, neg = abs_and_parts(a, tol)
    assert frob(pos - a) <= tol.recon * max(1.0, frob(a))
    assert frob(neg) <= tol.recon

    flip = np.array([[0.0, 1.0], [1.0, 0.0]])
    absolute, pos, neg = abs_and_parts(flip, tol)
    assert np.allclose(pos, np.full((2, 2), 0.5))
    assert np.allclose(neg, np.array([[0.5, -0.5], [-0.5, 0.5]]))


def test_decomposition_identities(tol):
    for i in range(200):
        rng = np.random.default_rng([53, i])
        a = random_symmetric(rng, int(rng.integers(2, 8)))
        absolute, pos, neg = abs_and_parts(a, tol)
        scale = max(1.0, frob(a))
        assert frob(a - (pos - neg)) <= tol.recon * scale
        assert frob(absolute - (pos + neg)) <= tol.recon * scale
        assert frob(pos @ neg) <= tol.recon * scale


def test_gen_infimum(tol):
    a = random_symmetric(np.random.default_rng(59), 3)
    assert frob(gen_infimum(a, a, tol) - a) <= tol.recon * max(1.0, frob(a))

    assert np.allclose(gen_infimum(np.diag([1.0, 4.0]), np.diag([3.0, 2.0]), tol),
                       np.diag([1.0, 2.0]))

    p = np.diag([1.0, 0.0])
    q = np.full((2, 2), 0.5)
    meet = gen_infimum(p, q, tol)
    assert loewner_cmp(meet, p, tol).leq
    assert loewner_cmp(meet, q, tol).leq


def test_gen_infimum_is_lower_bound(tol):
    for i in range(100):
        rng = np.random.default_rng([61, i])
        n = int(rng.integers(2, 7))
        a = random_symmetric(rng, n)
        b = random_symmetric(rng, n)
        meet = gen_infimum(a, b, tol)
        assert loewner_cmp(meet, a, tol).leq
        assert loewner_cmp(meet, b, tol).leq


def test_inverse(tol):
    assert np.allclose(inverse(np.eye(3), tol), np.eye(3))
    assert np.allclose(inverse(np.diag([2.0, -4.0]), tol), np.diag([0.5, -0.25]))
    for i in range(50):
        rng = np.random.default_rng([67, i])
        n = int(rng.integers(2, 7))
        a = random_symmetric(rng, n) + np.eye(n) * 3.0 * n
        inv = inverse(a, tol)
        assert frob(a @ inv - np.eye(n)) <= tol.recon * max(1.0, frob(a))
    with pytest.raises(NotInvertible):
        inverse(np.diag([1.0, 0.0]), tol)


def test_commutes(tol):
    a = random_symmetric(np.random.default_rng(71), 4)
    assert commutes(a, a, tol)
    assert commutes(np.diag([1.0, 2.0]), np.diag([3.0, -1.0]), tol)
    # commutator is [[0, -1], [1, 0]]
    assert not commutes(np.diag([1.0, 0.0]), [[0.0, 1.0], [1.0, 0.0]], tol)


def test_commuting_psd_product_is_psd(tol):
    # commuting PSD pair built from a shared eigenbasis
    for i in range(100):
        rng = np.random.default_rng([73, i])
        n = int(rng.integers(2, 7))
        u = random_orthogonal(rng, n)
        a = symmetrize(u @ np.diag(rng.uniform(0.0, 2.0, n)) @ u.T)
        b = symmetrize(u @ np.diag(rng.uniform(0.0, 2.0, n)) @ u.T)
        assert commutes(a, b, tol)
        prod = symmetrize(a @ b)
        assert loewner_cmp(np.zeros_like(prod), prod, tol).leq


def test_commuting_triple_order(tol):
    # a <= b, 0 <= c, c commutes with both => ca <= cb
    for i in range(100):
        rng = np.random.default_rng([79, i])
        n = int(rng.integers(2, 7))
        u = random_orthogonal(rng, n)
        da = rng.standard_normal(n)
        db = da + rng.uniform(0.0, 1.0, n)
        dc = rng.uniform(0.0, 2.0, n)
        a = symmetrize(u @ np.diag(da) @ u.T)
        b = symmetrize(u @ np.diag(db) @ u.T)
        c = symmetrize(u @ np.diag(dc) @ u.T)
        assert loewner_cmp(symmetrize(c @ a), symmetrize(c @ b), tol).leq


def test_product_zero_symmetric(tol):
    # ab = 0 iff ba = 0 on annihilating pairs with orthogonal supports
    for i in range(50):
        rng = np.random.default_rng([83, i])
        n = int(rng.integers(2, 7))
        u = random_orthogonal(rng, n)
        k = int(rng.integers(1, n))
        da = np.concatenate([rng.standard_normal(k), np.zeros(n - k)])
        db = np.concatenate([np.zeros(k), rng.standard_normal(n - k)])
        a = symmetrize(u @ np.diag(da) @ u.T)
        b = symmetrize(u @ np.diag(db) @ u.T)
        assert frob(a @ b) <= tol.recon
        assert frob(b @ a) <= tol.recon


def test_effect_characterization(tol):
    # 0 <= e <= 1 iff e² <= e
    for i in range(100):
        rng = np.random.default_rng([89, i])
        n = int(rng.integers(2, 7))
        from synlab.sampling import random_effect

        e = random_effect(rng, n)
        assert loewner_cmp(e @ e, e, tol).leq

        # conversely: e² <= e forces the spectrum into [0, 1]
        u = random_orthogonal(rng, n)
        d = rng.uniform(-0.5, 1.5, n)
        e = symmetrize(u @ np.diag(d) @ u.T)
        sq_leq = loewner_cmp(symmetrize(e @ e), e, tol).leq
        in_unit = loewner_cmp(np.zeros_like(e), e, tol).leq and \
            loewner_cmp(e, np.eye(n), tol).leq
        assert sq_leq == in_unit
