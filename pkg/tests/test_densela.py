import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import random_spd
from floerlab import densela
from floerlab.errors import InvalidInput, NotSpd, NotSymmetric, SingularShift


def test_heron_diagonal():
    r = densela.heron_sqrt(np.diag([4.0, 9.0]))
    np.testing.assert_allclose(r, np.diag([2.0, 3.0]), atol=1e-13)


def test_heron_identity_fixed_point():
    for k in (1, 3, 7):
        np.testing.assert_allclose(densela.heron_sqrt(np.eye(k)), np.eye(k), atol=1e-14)


def test_heron_against_eigen_oracle():
    q = np.array([[2.0, 1.0], [1.0, 2.0]])
    # oracle: symmetric eigendecomposition, entrywise sqrt of eigenvalues
    w, v = np.linalg.eigh(q)
    expected = v @ np.diag(np.sqrt(w)) @ v.T
    r = densela.heron_sqrt(q)
    np.testing.assert_allclose(r, expected, atol=1e-12)
    np.testing.assert_allclose(np.sort(np.linalg.eigvalsh(r)), [1.0, np.sqrt(3.0)], atol=1e-12)


def test_heron_random_spd_invariants(rng):
    for _ in range(25):
        size = int(rng.integers(2, 17))
        q = random_spd(rng, size, cond=10.0 ** rng.uniform(0, 6))
        r = densela.heron_sqrt(q, tol=1e-13)
        assert np.max(np.abs(r - r.T)) <= 1e-12 * np.max(np.abs(r))
        assert np.linalg.eigvalsh(r)[0] > 0
        assert np.linalg.norm(r @ r - q) <= 1e-12 * np.linalg.norm(q)
        assert np.linalg.norm(r @ q - q @ r) <= 1e-10 * np.linalg.norm(q) ** 2


def test_heron_commutes_with_polynomials_in_q(rng):
    q = random_spd(rng, 6, cond=50.0) * 10
    r = densela.heron_sqrt(q)
    for _ in range(5):
        c = rng.uniform(-1, 1, 3)
        k = c[0] * np.eye(6) + c[1] * q + c[2] * q @ q
        assert np.max(np.abs(k @ q - q @ k)) <= 1e-12 * np.max(np.abs(q)) ** 2
        assert np.max(np.abs(k @ r - r @ k)) <= 1e-10


def test_heron_coupled_form_matches_plain_recursion():
    # the inverse-carrying form must reproduce the plain averaging iterates
    q = np.array([[3.0, 1.0, 0.0], [1.0, 2.0, 0.5], [0.0, 0.5, 1.5]])
    r_plain = np.eye(3)
    for _ in range(12):
        r_plain = 0.5 * (r_plain + np.linalg.solve(r_plain, q))
    r = densela.heron_sqrt(q, tol=1e-15, max_iter=12)
    np.testing.assert_allclose(r, r_plain, atol=1e-12)


def test_heron_rejects_bad_input():
    with pytest.raises(NotSpd):
        densela.heron_sqrt(np.array([[1.0, 2.0], [0.0, 1.0]]))
    with pytest.raises(NotSpd):
        densela.heron_sqrt(np.diag([1.0, -2.0]))
    with pytest.raises(InvalidInput):
        densela.heron_sqrt(np.eye(2), tol=-1.0)


def test_spd_certificate_fields():
    cert = densela.spd_certificate(np.diag([2.0, 5.0]))
    assert cert.valid and cert.min_eigenvalue == pytest.approx(2.0)
    bad = densela.spd_certificate(np.array([[1.0, 1.0], [0.0, 1.0]]))
    assert not bad.valid and bad.symmetry_defect == pytest.approx(1.0)


def test_scalar_basic_values():
    assert densela.heron_sqrt_scalar(4.0, 1.0) == pytest.approx(2.0, abs=1e-13)
    iterates = densela.heron_scalar_iterates(2.0, 1.0, 3)
    assert iterates[1] == pytest.approx(1.5, abs=0)
    assert iterates[2] == pytest.approx(17.0 / 12.0, abs=5e-16)
    assert densela.heron_sqrt_scalar(9.0, 100.0) == pytest.approx(3.0, abs=1e-10)


def test_newton_picard_reproduces_heron():
    # same algebra, different rounding arrangement: agreement to the ulp
    a = densela.heron_scalar_iterates(9.0, 100.0, 10)
    b = densela.newton_picard_iterates(9.0, 100.0, 10)
    np.testing.assert_allclose(a, b, rtol=4e-16)


def test_scalar_invalid_input():
    for q, r1 in ((-1.0, 1.0), (0.0, 1.0), (1.0, 0.0), (1.0, -2.0)):
        with pytest.raises(InvalidInput):
            densela.heron_sqrt_scalar(q, r1)


@settings(max_examples=200, deadline=None)
@given(
    q=st.floats(min_value=1e-6, max_value=1e6),
    r1=st.floats(min_value=1e-6, max_value=1e6),
)
def test_scalar_iterates_monotone_above_root(q, r1):
    seq = densela.heron_scalar_iterates(q, r1, 30)
    root = np.sqrt(q)
    for n in range(1, len(seq) - 1):
        assert seq[n + 1] <= seq[n] * (1 + 8e-16)
        assert seq[n] >= root * (1 - 8e-16)


def test_sym_eigen_examples():
    w, _ = densela.sym_eigen(np.diag([3.0, 1.0, 2.0]))
    np.testing.assert_allclose(w, [1.0, 2.0, 3.0], atol=1e-14)
    w, _ = densela.sym_eigen(np.array([[0.0, 1.0], [1.0, 0.0]]))
    np.testing.assert_allclose(w, [-1.0, 1.0], atol=1e-14)
    # characteristic polynomial oracle for [[2,1],[1,2]]: (2-x)^2 = 1
    w, v = densela.sym_eigen(np.array([[2.0, 1.0], [1.0, 2.0]]))
    np.testing.assert_allclose(w, [1.0, 3.0], atol=1e-14)
    np.testing.assert_allclose(v.T @ v, np.eye(2), atol=1e-12)


def test_sym_eigen_residuals(rng):
    m = rng.standard_normal((12, 12))
    m = m + m.T
    w, v = densela.sym_eigen(m)
    assert np.linalg.norm(m @ v - v @ np.diag(w)) <= 1e-10 * np.linalg.norm(m)
    with pytest.raises(NotSymmetric):
        densela.sym_eigen(np.array([[0.0, 1.0], [0.0, 0.0]]))


def test_resolvent_norm_examples():
    assert densela.shifted_resolvent_norm(np.array([[1.0]]), 1.0) == pytest.approx(1 / np.sqrt(2))
    assert densela.shifted_resolvent_norm(np.zeros((4, 4)), 5.0) == pytest.approx(1.0)


def test_resolvent_norm_symmetric_formula(rng):
    for _ in range(10):
        eigs = rng.uniform(-5, 5, 6)
        q, _ = np.linalg.qr(rng.standard_normal((6, 6)))
        a = q @ np.diag(eigs) @ q.T
        a = 0.5 * (a + a.T)
        for alpha in (0.3, 2.0, -7.0):
            expected = np.max(np.abs(alpha) / np.sqrt(eigs**2 + alpha**2))
            got = densela.shifted_resolvent_norm(a, alpha)
            assert got == pytest.approx(expected, rel=1e-10)
            assert got <= 1 + 1e-12


def test_resolvent_singular_shift():
    # [[0,1],[-1,0]] has spectrum {+-i}: the shift at alpha=1 is singular
    with pytest.raises(SingularShift):
        densela.shifted_resolvent_norm(np.array([[0.0, 1.0], [-1.0, 0.0]]), 1.0)
    with pytest.raises(InvalidInput):
        densela.shifted_resolvent_norm(np.eye(2), 0.0)


def test_svd_values_examples():
    np.testing.assert_allclose(densela.svd_values(np.eye(5)), np.ones(5), atol=1e-14)
    np.testing.assert_allclose(densela.svd_values(np.diag([3.0, 0.0])), [3.0, 0.0], atol=1e-14)
    m = np.array([[0.0, 2.0], [0.0, 0.0]])
    # oracle: singular values^2 = eigenvalues of M^T M
    expected = np.sqrt(np.sort(np.linalg.eigvalsh(m.T @ m))[::-1])
    np.testing.assert_allclose(densela.svd_values(m), expected, atol=1e-14)


@settings(max_examples=300, deadline=None)
@given(
    st.lists(st.floats(min_value=1e-8, max_value=1e6), min_size=1, max_size=20)
)
def test_sum_quadrature_inequality(values):
    lhs, rhs = densela.sum_quadrature_inequality(np.array(values))
    assert lhs <= rhs * (1 + 1e-12)
