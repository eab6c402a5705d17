import numpy as np
import pytest

from floerlab import chart as chart_mod
from floerlab import symplectic
from floerlab.errors import Degenerate, NotAntisymmetric

OMEGA0 = np.array([[0.0, 1.0], [-1.0, 0.0]])


def test_b_from_standard_form():
    np.testing.assert_allclose(
        symplectic.b_from_omega(OMEGA0), np.array([[0.0, -1.0], [1.0, 0.0]]), atol=1e-14
    )


def test_b_scales_inversely():
    np.testing.assert_allclose(
        symplectic.b_from_omega(2.0 * OMEGA0), 0.5 * np.linalg.inv(OMEGA0), atol=1e-14
    )


def test_b_on_cubic_chart_probe():
    cub = chart_mod.cubic_chart()
    omega = cub.omega(np.array([1.0, 0.0]))
    # oracle: direct 2x2 inversion of (1 + x1^2) Omega0
    np.testing.assert_allclose(
        symplectic.b_from_omega(omega), np.linalg.inv(2.0 * OMEGA0), atol=1e-14
    )
    np.testing.assert_allclose(
        symplectic.b_from_omega(omega), 0.5 * np.array([[0.0, -1.0], [1.0, 0.0]]), atol=1e-14
    )


def test_b_rejects_bad_forms():
    with pytest.raises(NotAntisymmetric):
        symplectic.b_from_omega(np.eye(2))
    degenerate = np.zeros((4, 4))
    degenerate[:2, :2] = OMEGA0
    with pytest.raises(Degenerate):
        symplectic.b_from_omega(degenerate)


def test_jb_standard_block():
    b = np.array([[0.0, -1.0], [1.0, 0.0]])
    jb, root = symplectic.jb_from_b(b)
    np.testing.assert_allclose(root, np.eye(2), atol=1e-12)
    np.testing.assert_allclose(jb, b, atol=1e-12)


def test_jb_scale_cancels():
    for c in (0.3, 2.0, 11.0):
        jb, root = symplectic.jb_from_b(c * np.array([[0.0, -1.0], [1.0, 0.0]]))
        np.testing.assert_allclose(root, c * np.eye(2), atol=1e-11 * c)
        np.testing.assert_allclose(jb, np.array([[0.0, -1.0], [1.0, 0.0]]), atol=1e-11)


def test_jb_random_antisymmetric(rng):
    for _ in range(10):
        m = rng.standard_normal((4, 4))
        b = m - m.T + 0.5 * np.kron(np.eye(2), OMEGA0)
        if abs(np.linalg.det(b)) < 1e-6:
            continue
        jb, root = symplectic.jb_from_b(b)
        assert abs(np.linalg.det(jb) - 1.0) <= 1e-10
        np.testing.assert_allclose(jb @ jb, -np.eye(4), atol=1e-10)
        assert np.linalg.norm(root @ b - b @ root) <= 1e-10 * np.linalg.norm(b) ** 2
        assert np.linalg.det(b) > 0


def test_certify_darboux_point():
    data = symplectic.symplectic_point(OMEGA0)
    report = symplectic.certify_point(data, tol=1e-14)
    assert report["passed"], report


def test_certify_cubic_point():
    cub = chart_mod.cubic_chart()
    x = np.array([1.0, 0.0])
    data = symplectic.symplectic_point(cub.omega(x), x)
    report = symplectic.certify_point(data, tol=1e-10)
    assert report["passed"], report


def test_certify_flags_corrupted_b():
    data = symplectic.symplectic_point(OMEGA0)
    bad_b = data.b.copy()
    bad_b[0, 1] = -bad_b[0, 1]  # break antisymmetry with one sign flip
    corrupted = symplectic.SymplecticPointData(
        x=data.x, omega=data.omega, b=bad_b, jb=data.jb, gb=data.gb
    )
    report = symplectic.certify_point(corrupted, tol=1e-10)
    assert not report["passed"]
    assert report["residuals"]["b_antisymmetry"] > 1e-10


def test_pointwise_pairing_properties(rng):
    cub = chart_mod.exp_chart()
    x = np.array([0.4, -0.8])
    omega = cub.omega(x)
    b = symplectic.b_from_omega(omega)
    jb, root = symplectic.jb_from_b(b)
    root_inv = np.linalg.inv(root)
    for _ in range(25):
        xi, eta = rng.standard_normal((2, 2))
        # omega-antisymmetry of B
        assert abs(xi @ omega @ (b @ eta) + (b @ xi) @ omega @ eta) <= 1e-12 * (
            1 + np.linalg.norm(xi) * np.linalg.norm(eta)
        )
        # <-B^2 xi, xi> = |B xi|^2 > 0
        val = -(b @ (b @ xi)) @ xi
        assert val > 0 and abs(val - (b @ xi) @ (b @ xi)) <= 1e-12 * (1 + val)
        # metric positivity through the inverse root
        if np.linalg.norm(xi) > 1e-12:
            assert xi @ root_inv @ xi > 0
    assert abs(np.linalg.det(b) - np.linalg.det(root)) <= 1e-12
