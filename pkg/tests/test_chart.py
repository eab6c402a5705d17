import json

import numpy as np
import pytest

from floerlab import chart as chart_mod
from floerlab.errors import (
    NondegeneracyProbeFailed,
    OddDimension,
    OutOfDomain,
    SchemaError,
)

OMEGA0 = np.array([[0.0, 1.0], [-1.0, 0.0]])


def test_darboux_l_tensor_vanishes(rng):
    dar = chart_mod.darboux_chart(2)
    for _ in range(10):
        x = rng.uniform(-3, 3, 4)
        assert np.max(np.abs(chart_mod.l_tensor_at(dar, x).values)) == 0.0


def test_cubic_l_tensor_components():
    cub = chart_mod.cubic_chart()
    x = np.array([1.0, 0.0])
    lam = cub.second_derivatives(x)
    assert lam[0, 0, 1] == pytest.approx(2.0)  # Lambda_112 = 2 x1
    values = chart_mod.l_tensor_at(cub, x).values
    assert values[0, 0, 1] == pytest.approx(2.0)
    assert values[0, 1, 0] == pytest.approx(-2.0)
    mask = np.ones_like(values, dtype=bool)
    mask[0, 0, 1] = mask[0, 1, 0] = False
    assert np.max(np.abs(values[mask])) == 0.0


def test_l_tensor_against_finite_differences(rng):
    cub = chart_mod.cubic_chart()
    step = 1e-5
    for _ in range(5):
        x = rng.uniform(-1, 1, 2)
        lam = cub.second_derivatives(x)
        for k in range(2):
            e = np.zeros(2)
            e[k] = step
            fd = (cub.lambda_jacobian(x + e) - cub.lambda_jacobian(x - e)) / (2 * step)
            assert np.max(np.abs(fd - lam[k])) <= 1e-7


def test_l_identities_random(rng):
    for builder in (chart_mod.cubic_chart, chart_mod.exp_chart):
        ch = builder()
        for _ in range(50):
            x = rng.uniform(-1, 1, 2)
            t = chart_mod.l_tensor_at(ch, x)
            eta, xi, zeta = rng.standard_normal((3, 2))
            cyc = t.contract(eta, xi, zeta) + t.contract(zeta, eta, xi) + t.contract(xi, zeta, eta)
            schwarz = (
                t.contract(eta, xi, zeta) - t.contract(xi, eta, zeta) - t.contract(zeta, xi, eta)
            )
            assert abs(cyc) <= 1e-12
            assert abs(schwarz) <= 1e-12


def test_lbar_apply(rng):
    dar = chart_mod.darboux_chart(1)
    assert np.max(np.abs(chart_mod.lbar_apply(dar, np.zeros(2), np.ones(2), np.ones(2)))) == 0.0

    cub = chart_mod.cubic_chart()
    x = np.array([1.0, 0.0])
    # oracle: explicit triple sum over the two nonzero components
    values = chart_mod.l_tensor_at(cub, x).values
    eta, zeta = np.array([1.0, 0.0]), np.array([0.0, 1.0])
    expected = np.einsum("kji,k,i->j", values, eta, zeta)
    got = chart_mod.lbar_apply(cub, x, eta, zeta)
    np.testing.assert_allclose(got, expected, atol=0)
    np.testing.assert_allclose(got, [2.0, 0.0], atol=1e-14)

    assert np.max(np.abs(chart_mod.lbar_apply(cub, x, np.zeros(2), zeta))) == 0.0
    for _ in range(20):
        eta, zeta, xi = rng.standard_normal((3, 2))
        lb = chart_mod.lbar_apply(cub, x, eta, zeta)
        t = chart_mod.l_tensor_at(cub, x)
        assert abs(float(lb @ xi) - t.contract(eta, xi, zeta)) <= 1e-12


def test_hamiltonian_vector_field():
    dar = chart_mod.darboux_chart(1)
    zero_h = chart_mod.Hamiltonian(dim=2, modes=[])
    assert np.max(np.abs(chart_mod.hamiltonian_vector_field(dar, zero_h, 0.0, np.ones(2)))) == 0.0

    h = chart_mod.quadratic_hamiltonian(2, 0.5)  # h = |x|^2 / 2
    for x in (np.array([1.0, 0.0]), np.array([0.3, -0.7])):
        field = chart_mod.hamiltonian_vector_field(dar, h, 0.0, x)
        # oracle: solve Omega X = grad h by hand; rotation preserving length
        expected = np.linalg.solve(OMEGA0, x)
        np.testing.assert_allclose(field, expected, atol=1e-14)
        assert np.linalg.norm(field) == pytest.approx(np.linalg.norm(x))
        # defining residual
        omega = dar.omega(x)
        assert np.max(np.abs(h.grad(0.0, x) - omega @ field)) <= 1e-12

    cub = chart_mod.cubic_chart()
    h2 = chart_mod.Hamiltonian(
        dim=2,
        modes=[(0, chart_mod.PolyCoefficient(
            chart_mod.Polynomial.from_terms(2, [(1.0, [0, 1])])), None)],
    )  # h = x2
    x = np.array([1.0, 0.5])
    field = chart_mod.hamiltonian_vector_field(cub, h2, 0.0, x)
    np.testing.assert_allclose(field, np.linalg.solve(cub.omega(x), [0.0, 1.0]), atol=1e-14)


def test_hessian_of_h():
    h = chart_mod.quadratic_hamiltonian(2, 0.5)
    np.testing.assert_allclose(chart_mod.hessian_of_h(h, 0.3, np.ones(2)), np.eye(2), atol=1e-14)
    zero_h = chart_mod.Hamiltonian(dim=2, modes=[])
    assert np.max(np.abs(chart_mod.hessian_of_h(zero_h, 0.1, np.ones(2)))) == 0.0

    x1sq = chart_mod.PolyCoefficient(chart_mod.Polynomial.from_terms(2, [(1.0, [2, 0])]))
    h_t = chart_mod.Hamiltonian(dim=2, modes=[(1, x1sq, None)])  # cos(2 pi t) x1^2
    for t in (0.0, 0.2, 0.6):
        expected = np.diag([2.0 * np.cos(2 * np.pi * t), 0.0])
        np.testing.assert_allclose(chart_mod.hessian_of_h(h_t, t, np.zeros(2)), expected, atol=1e-14)


DARBOUX_JSON = {
    "dim": 2,
    "lambda": [
        [{"exponents": [0, 1], "coeff": -0.5}],
        [{"exponents": [1, 0], "coeff": 0.5}],
    ],
    "probes": [[0.0, 0.0], [1.0, 2.0]],
}

CUBIC_JSON = {
    "dim": 2,
    "lambda": [
        [],
        [{"exponents": [1, 0], "coeff": 1.0}, {"exponents": [3, 0], "coeff": 1.0 / 3.0}],
    ],
    "probes": [[0.0, 0.0], [1.0, 0.0]],
    "domain": {"type": "box", "min": [-5.0, -5.0], "max": [5.0, 5.0]},
}


def test_parse_chart_darboux():
    spec = chart_mod.parse_chart(json.dumps(DARBOUX_JSON))
    for p in spec.probes:
        assert np.max(np.abs(chart_mod.l_tensor_at(spec, p).values)) == 0.0
        np.testing.assert_allclose(spec.omega(p), OMEGA0, atol=1e-14)


def test_parse_chart_cubic():
    spec = chart_mod.parse_chart(json.dumps(CUBIC_JSON))
    for p in spec.probes:
        np.testing.assert_allclose(spec.omega(p), (1 + p[0] ** 2) * OMEGA0, atol=1e-14)
    assert not spec.contains(np.array([6.0, 0.0]))
    with pytest.raises(OutOfDomain):
        chart_mod.l_tensor_at(spec, np.array([6.0, 0.0]))


def test_parse_chart_rejects_malformed():
    bad = dict(CUBIC_JSON)
    bad["lambda"] = [[{"exponents": [1], "coeff": 1.0}], []]
    with pytest.raises(SchemaError):
        chart_mod.parse_chart(json.dumps(bad))
    with pytest.raises(SchemaError):
        chart_mod.parse_chart(b"not json {")
    with pytest.raises(OddDimension):
        chart_mod.parse_chart(json.dumps({"dim": 3, "lambda": [[], [], []]}))
    degenerate = {"dim": 2, "lambda": [[], []], "probes": [[0.0, 0.0]]}
    with pytest.raises(NondegeneracyProbeFailed):
        chart_mod.parse_chart(json.dumps(degenerate))


def test_parse_hamiltonian():
    doc = {
        "modes": [
            {"k": 0, "cos_poly": [{"exponents": [2, 0], "coeff": 1.0}]},
            {
                "k": 1,
                "cos_poly": [{"exponents": [0, 2], "coeff": 0.5}],
                "sin_poly": [{"exponents": [1, 1], "coeff": 2.0}],
            },
        ]
    }
    h = chart_mod.parse_hamiltonian(json.dumps(doc), dim=2)
    x = np.array([1.0, 2.0])
    t = 0.37
    expected = x[0] ** 2 + np.cos(2 * np.pi * t) * 0.5 * x[1] ** 2 + np.sin(2 * np.pi * t) * 2 * x[0] * x[1]
    assert h.value(t, x) == pytest.approx(expected, rel=1e-14)
    with pytest.raises(SchemaError):
        chart_mod.parse_hamiltonian(json.dumps({"modes": [{"k": -1}]}), dim=2)


def test_first_derivative_finite_difference(rng):
    step = 1e-5
    for builder in chart_mod.BUILTIN_CHARTS.values():
        ch = builder()
        for _ in range(5):
            x = rng.uniform(-1, 1, ch.dim)
            jac = ch.lambda_jacobian(x)
            for j in range(ch.dim):
                e = np.zeros(ch.dim)
                e[j] = step
                fd = (ch.lambda_value(x + e) - ch.lambda_value(x - e)) / (2 * step)
                assert np.max(np.abs(fd - jac[j, :])) <= 1e-6
