"""Seeded invariant suites, one per module, driven by the verify command.

Each suite returns a JSON-ready dict {name, passed, checks: [...]}; the checks
are small, deterministic instances of the module invariants.  The heavyweight
acceptance-scale versions live in the test suite.
"""

from __future__ import annotations

import numpy as np

from . import action as act
from . import chart as chart_mod
from . import densela
from . import fredholm as fred
from . import loopspace as ls
from . import symplectic
from .loopspace import Loop


def _check(name: str, passed: bool, detail: str = "") -> dict:
    return {"name": name, "passed": bool(passed), "detail": detail}


def _suite(name: str, checks: list[dict]) -> dict:
    return {"name": name, "passed": all(c["passed"] for c in checks), "checks": checks}


def _random_spd(rng: np.random.Generator, size: int, cond: float) -> np.ndarray:
    q, _ = np.linalg.qr(rng.standard_normal((size, size)))
    eigs = np.exp(np.linspace(-np.log(cond), 0.0, size))
    return q @ np.diag(eigs) @ q.T


def random_split_family(
    rng: np.random.Generator, dim: int = 4, halves: tuple[float, float] = (-5.0, 5.0)
) -> tuple["fred.SyntheticPath", "fred.SyntheticPath"]:
    """One smooth random eigenvalue family split at s = 0 into two legs.

    Eigenvalues are sums of tanh steps; resampled until the junction and both
    ends sit safely away from zero.
    """
    lo, hi = halves
    for _ in range(100):
        base = rng.uniform(-1.2, 1.2, dim)
        amps = rng.uniform(0.3, 1.0, (3, dim)) * rng.choice([-1.0, 1.0], (3, dim))
        centers = rng.uniform(lo * 0.9, hi * 0.9, (3, dim))

        def f(s, base=base, amps=amps, centers=centers):
            return base + np.sum(amps * np.tanh(2.0 * (s - centers)), axis=0)

        if min(np.min(np.abs(f(v))) for v in (lo, 0.0, hi)) > 0.05:
            qb, _ = np.linalg.qr(rng.standard_normal((dim, dim)))
            p1 = fred.SyntheticPath(np.linspace(lo, 0.0, 41), f, basis=qb)
            p2 = fred.SyntheticPath(np.linspace(0.0, hi, 41), f, basis=qb)
            return p1, p2
    raise RuntimeError("could not draw a nondegenerate random family")


def _random_band_loop(
    rng: np.random.Generator, half_dim: int, num_samples: int, band: int, amplitude: float
) -> Loop:
    t = ls.time_grid(num_samples)
    samples = np.zeros((num_samples, 2 * half_dim))
    for c in range(2 * half_dim):
        for k in range(1, band + 1):
            decay = amplitude * 0.5**k
            samples[:, c] += decay * (
                rng.standard_normal() * np.cos(2 * np.pi * k * t)
                + rng.standard_normal() * np.sin(2 * np.pi * k * t)
            )
        samples[:, c] += 0.1 * amplitude * rng.standard_normal()
    return Loop(samples)


# ---------------------------------------------------------------------------


def densela_suite(seed: int = 0) -> dict:
    rng = np.random.default_rng(seed)
    checks = []

    worst_res, worst_comm, worst_poly = 0.0, 0.0, 0.0
    for _ in range(20):
        size = int(rng.integers(2, 11))
        q = _random_spd(rng, size, cond=10.0 ** rng.uniform(0, 5))
        r = densela.heron_sqrt(q, tol=1e-13)
        worst_res = max(worst_res, np.linalg.norm(r @ r - q) / np.linalg.norm(q))
        worst_comm = max(worst_comm, np.linalg.norm(r @ q - q @ r))
        coeffs = rng.uniform(-1, 1, 3)
        kpoly = coeffs[0] * np.eye(size) + coeffs[1] * q + coeffs[2] * q @ q
        worst_poly = max(worst_poly, np.max(np.abs(kpoly @ r - r @ kpoly)))
    checks.append(_check("heron_residual", worst_res <= 1e-12, f"max rel residual {worst_res:.2e}"))
    checks.append(_check("heron_commutes_q", worst_comm <= 1e-10, f"max commutator {worst_comm:.2e}"))
    checks.append(_check("heron_commutes_poly", worst_poly <= 1e-10, f"max {worst_poly:.2e}"))

    mono_ok = True
    for _ in range(50):
        q = float(rng.uniform(0.01, 100.0))
        r1 = float(rng.uniform(0.01, 100.0))
        seq = densela.heron_scalar_iterates(q, r1, 25)
        root = np.sqrt(q)
        for n in range(1, len(seq) - 1):  # iterates r_2, r_3, ...
            if seq[n + 1] > seq[n] * (1 + 8e-16) or seq[n] < root * (1 - 8e-16):
                mono_ok = False
    checks.append(_check("scalar_monotone_from_n2", mono_ok))

    np_ok = True
    for _ in range(20):
        q = float(rng.uniform(0.1, 50.0))
        r1 = float(rng.uniform(0.1, 50.0))
        a = densela.heron_scalar_iterates(q, r1, 12)
        b = densela.newton_picard_iterates(q, r1, 12)
        # identical algebra, different rounding arrangement: agree to the ulp
        np_ok = np_ok and np.allclose(a, b, rtol=4e-16, atol=0)
    checks.append(_check("newton_picard_reproduces_heron", np_ok))

    sq_ok = True
    for _ in range(1000):
        vals = rng.uniform(1e-6, 10.0, int(rng.integers(1, 21)))
        lhs, rhs = densela.sum_quadrature_inequality(vals)
        sq_ok = sq_ok and lhs <= rhs * (1 + 1e-12)
    checks.append(_check("sum_quadrature_inequality", sq_ok))

    res_ok = True
    for _ in range(20):
        size = int(rng.integers(1, 9))
        m = rng.standard_normal((size, size))
        m = m + m.T
        for alpha in (0.1, 1.0, 10.0, -3.0):
            res_ok = res_ok and densela.shifted_resolvent_norm(m, alpha) <= 1 + 1e-10
    checks.append(_check("symmetric_resolvent_bound", res_ok))

    sv = densela.svd_values(np.array([[0.0, 2.0], [0.0, 0.0]]))
    checks.append(_check("svd_values_oracle", np.allclose(sv, [2.0, 0.0], atol=1e-14)))
    return _suite("densela", checks)


def symplectic_suite(seed: int = 0) -> dict:
    rng = np.random.default_rng(seed)
    checks = []
    for name, builder in chart_mod.BUILTIN_CHARTS.items():
        ch = builder()
        worst = 0.0
        for probe in ch.probes:
            data = symplectic.symplectic_point(ch.omega(probe), probe)
            report = symplectic.certify_point(data, tol=1e-10)
            worst = max(worst, max(report["residuals"].values()))
        checks.append(_check(f"certify_{name}", worst <= 1e-10, f"max residual {worst:.2e}"))

    ch = chart_mod.cubic_chart()
    x = np.array([0.7, -0.3])
    omega = ch.omega(x)
    b = symplectic.b_from_omega(omega)
    ok_anti, ok_pos, ok_metric = True, True, True
    jb, root = symplectic.jb_from_b(b)
    root_inv = np.linalg.inv(root)
    for _ in range(50):
        xi = rng.standard_normal(2)
        eta = rng.standard_normal(2)
        lhs = xi @ omega @ (b @ eta)
        rhs = -(b @ xi) @ omega @ eta
        ok_anti = ok_anti and abs(lhs - rhs) <= 1e-12 * (np.linalg.norm(xi) * np.linalg.norm(eta) + 1)
        ok_pos = ok_pos and (-(b @ (b @ xi)) @ xi) > 0 and abs((-(b @ (b @ xi)) @ xi) - (b @ xi) @ (b @ xi)) < 1e-12
        ok_metric = ok_metric and xi @ root_inv @ xi > 0
    checks.append(_check("omega_antisymmetry_pairing", ok_anti))
    checks.append(_check("neg_b2_positivity", ok_pos))
    checks.append(_check("metric_positivity", ok_metric))

    det_ok = abs(np.linalg.det(b) - np.linalg.det(root)) <= 1e-12 and np.linalg.det(b) > 0
    checks.append(_check("det_b_equals_det_root", det_ok))
    return _suite("symplectic", checks)


def chart_suite(seed: int = 0) -> dict:
    rng = np.random.default_rng(seed)
    checks = []
    step = 1e-5
    for name in ("cubic", "exp"):
        ch = chart_mod.BUILTIN_CHARTS[name]()
        worst1, worst2 = 0.0, 0.0
        for _ in range(10):
            x = rng.uniform(-1, 1, 2)
            jac = ch.lambda_jacobian(x)
            lam2 = ch.second_derivatives(x)
            for j in range(2):
                e = np.zeros(2)
                e[j] = step
                fd_grad = (ch.lambda_value(x + e) - ch.lambda_value(x - e)) / (2 * step)
                worst1 = max(worst1, float(np.max(np.abs(fd_grad - jac[j, :]))))
                fd_hess = (ch.lambda_jacobian(x + e) - ch.lambda_jacobian(x - e)) / (2 * step)
                worst2 = max(worst2, float(np.max(np.abs(fd_hess - lam2[j]))))
        checks.append(_check(f"fd_first_{name}", worst1 <= 1e-6, f"{worst1:.2e}"))
        checks.append(_check(f"fd_second_{name}", worst2 <= 1e-5, f"{worst2:.2e}"))

        worst_cyc, worst_schwarz, worst_lbar = 0.0, 0.0, 0.0
        for _ in range(100):
            x = rng.uniform(-1, 1, 2)
            tensor = chart_mod.l_tensor_at(ch, x)
            eta, xi, zeta = rng.standard_normal((3, 2))
            cyc = (
                tensor.contract(eta, xi, zeta)
                + tensor.contract(zeta, eta, xi)
                + tensor.contract(xi, zeta, eta)
            )
            schwarz = (
                tensor.contract(eta, xi, zeta)
                - tensor.contract(xi, eta, zeta)
                - tensor.contract(zeta, xi, eta)
            )
            worst_cyc = max(worst_cyc, abs(cyc))
            worst_schwarz = max(worst_schwarz, abs(schwarz))
            lbar = chart_mod.lbar_apply(ch, x, eta, zeta)
            worst_lbar = max(worst_lbar, abs(float(lbar @ xi) - tensor.contract(eta, xi, zeta)))
        checks.append(_check(f"cyclic_{name}", worst_cyc <= 1e-12, f"{worst_cyc:.2e}"))
        checks.append(_check(f"schwarz_{name}", worst_schwarz <= 1e-12, f"{worst_schwarz:.2e}"))
        checks.append(_check(f"lbar_identity_{name}", worst_lbar <= 1e-12, f"{worst_lbar:.2e}"))

    dar = chart_mod.darboux_chart(2)
    zero_ok, const_ok = True, True
    b0 = dar.b_matrix(np.zeros(4))
    for _ in range(10):
        x = rng.uniform(-2, 2, 4)
        zero_ok = zero_ok and np.max(np.abs(chart_mod.l_tensor_at(dar, x).values)) == 0.0
        const_ok = const_ok and np.allclose(dar.b_matrix(x), b0, atol=1e-14)
    checks.append(_check("darboux_l_vanishes", zero_ok))
    checks.append(_check("darboux_b_constant", const_ok))
    return _suite("chart", checks)


def loopspace_suite(seed: int = 0) -> dict:
    rng = np.random.default_rng(seed)
    checks = []
    m = 32

    parseval_ok = True
    for _ in range(20):
        u = _random_band_loop(rng, 1, m, band=10, amplitude=1.0)
        quad = np.sqrt(np.mean(np.sum(u.samples**2, axis=1)))
        parseval_ok = parseval_ok and abs(quad - ls.sobolev_norm(u, 0)) <= 1e-12 * (1 + quad)
    checks.append(_check("parseval_at_grid", parseval_ok))

    t = ls.time_grid(16)
    u = Loop(np.column_stack([np.cos(2 * np.pi * t), np.sin(2 * np.pi * t)]))
    du = ls.spectral_derivative(u)
    exact = 2 * np.pi * np.column_stack([-np.sin(2 * np.pi * t), np.cos(2 * np.pi * t)])
    checks.append(
        _check("derivative_single_mode", float(np.max(np.abs(du.samples - exact))) <= 1e-12)
    )
    const = Loop.constant(np.array([1.0, -2.0]), 16)
    checks.append(
        _check(
            "derivative_constant",
            float(np.max(np.abs(ls.spectral_derivative(const).samples))) <= 1e-13,
        )
    )

    order_ok = True
    for _ in range(100):
        u = _random_band_loop(rng, 1, m, band=12, amplitude=1.0)
        n0, n1, n2 = (ls.sobolev_norm(u, r) for r in (0, 1, 2))
        order_ok = order_ok and n0 <= n1 * (1 + 1e-12) and n1 <= n2 * (1 + 1e-12)
    checks.append(_check("norm_ordering", order_ok))

    proj_ok = True
    u = _random_band_loop(rng, 1, m, band=12, amplitude=1.0)
    for n in (0, 5, 16, 2 * m):
        low = ls.project_low_modes(u, n)
        low2 = ls.project_low_modes(low, n)
        high = ls.project_high_modes(u, n)
        proj_ok = proj_ok and np.allclose(low.samples, low2.samples, atol=1e-12)
        for r in (1, 2):
            total = ls.sobolev_norm(u, r) ** 2
            split = ls.sobolev_norm(low, r) ** 2 + ls.sobolev_norm(high, r) ** 2
            proj_ok = proj_ok and abs(total - split) <= 1e-10 * (1 + total)
    checks.append(_check("projection_idempotent_orthogonal", proj_ok))

    growth = ls.loop_growth_function(2, m)
    weight_ok = True
    for n in (4, 10, 20):
        u_high = ls.project_high_modes(_random_band_loop(rng, 1, m, 12, 1.0), n)
        lhs = ls.sobolev_norm(u_high, 2) ** 2
        rhs = growth[n] * ls.sobolev_norm(u_high, 1) ** 2
        weight_ok = weight_ok and lhs >= rhs * (1 - 1e-10)
    checks.append(_check("high_mode_weight_inequality", weight_ok))

    space = ls.WeightedSeqSpace(growth)
    spike_ok, claim_ok = True, True
    for n in (1, 2, 4, 8):
        pattern = np.zeros(growth.size)
        pattern[n] = 1.0
        prof = ls.spike_profile(pattern, 0.8, space=space)
        spike_ok = (
            spike_ok
            and abs(prof.slope_norm_sq - 1.0) <= 1e-10
            and abs(prof.value_norm_sq - (4.0 / 3.0) * 0.8**4) <= 1e-3 * (4.0 / 3.0) * 0.8**4
        )
        a_unit = ls.spike_unit_h2_amplitude(pattern, space)
        bound = (3.0 / (4.0 * growth[n])) ** 0.25
        claim_ok = claim_ok and a_unit <= bound + 1e-12
        sup = a_unit  # peak of the tent = amplitude
        claim_ok = claim_ok and sup <= (3.0 / growth[n]) ** 0.25 + 1e-12
    checks.append(_check("spike_norms", spike_ok))
    checks.append(_check("projection_claim_on_spikes", claim_ok))
    return _suite("loopspace", checks)


def action_suite(seed: int = 0) -> dict:
    rng = np.random.default_rng(seed)
    checks = []
    m = 32
    ch = chart_mod.cubic_chart()
    h = chart_mod.quadratic_hamiltonian(2, 0.25)

    grad_ok, hess_ok, bilinear_ok = True, True, True
    for _ in range(5):
        u = _random_band_loop(rng, 1, m, band=3, amplitude=0.4)
        xi = _random_band_loop(rng, 1, m, band=3, amplitude=1.0)
        eta = _random_band_loop(rng, 1, m, band=3, amplitude=1.0)
        g = act.gradient(ch, h, u)
        eps = 1e-5
        fd = (
            act.action_value(ch, h, Loop(u.samples + eps * xi.samples))
            - act.action_value(ch, h, Loop(u.samples - eps * xi.samples))
        ) / (2 * eps)
        pairing = ls.h0_inner(xi, g)
        grad_ok = grad_ok and abs(fd - pairing) <= 1e-6 * max(1.0, abs(pairing))

        op = act.assemble_hessian(ch, h, u)
        quad_form = ls.h0_inner(xi, op.apply(eta))
        eps2 = 1e-4
        vals = {}
        for s1 in (1, -1):
            for s2 in (1, -1):
                vals[(s1, s2)] = act.action_value(
                    ch, h, Loop(u.samples + eps2 * (s1 * xi.samples + s2 * eta.samples))
                )
        fd2 = (vals[(1, 1)] - vals[(1, -1)] - vals[(-1, 1)] + vals[(-1, -1)]) / (4 * eps2 * eps2)
        hess_ok = hess_ok and abs(fd2 - quad_form) <= 1e-5 * max(1.0, abs(quad_form))

        direct = act.second_derivative_quadrature(ch, h, u, xi, eta)
        bilinear_ok = bilinear_ok and abs(direct - quad_form) <= 1e-10 * max(1.0, abs(quad_form))
    checks.append(_check("gradient_fd", grad_ok))
    checks.append(_check("hessian_fd", hess_ok))
    checks.append(_check("bilinear_quadrature", bilinear_ok))

    u = _random_band_loop(rng, 1, m, band=4, amplitude=0.5)
    pair = act.decompose(ch, h, u)
    op = act.assemble_hessian(ch, h, u)
    split_ok = np.max(np.abs(pair.f_part.mat + pair.c_part.mat - op.mat)) <= 1e-12 * np.max(
        np.abs(op.mat)
    )
    spike_vec = np.zeros(2 * m)
    spike_vec[2 * 5 : 2 * 5 + 2] = rng.standard_normal(2)
    out = pair.c_part.mat @ spike_vec
    local_ok = np.all(out[: 2 * 5] == 0) and np.all(out[2 * 5 + 2 :] == 0)
    checks.append(_check("decompose_splits_exactly", bool(split_ok)))
    checks.append(_check("c_is_pointwise_multiplication", bool(local_ok)))

    kernel_ok = True
    for chart_name in ("darboux", "cubic"):
        c = chart_mod.BUILTIN_CHARTS[chart_name]()
        const = Loop.constant(np.array([0.5, 0.2]), m) if chart_name != "darboux" else Loop.constant(np.zeros(2), m)
        op0 = act.assemble_hessian(c, None, const)
        kernel_ok = kernel_ok and act.kernel_dimension(op0, tol=1e-8) == 2
    checks.append(_check("constant_loop_kernel_dim", kernel_ok))

    u_star = _random_band_loop(rng, 1, m, band=3, amplitude=0.4)
    pair_star = act.decompose(ch, h, u_star)
    op_star = act.assemble_hessian(ch, h, u_star)
    new_pair = act.cutoff_redecompose(ch, pair_star, u_star, u_star, eps=0.5, a_op=op_star)
    zero_ok = np.max(np.abs(new_pair.c_part.mat)) <= 1e-14
    far = Loop(u_star.samples + 1.0)
    pair_far = act.decompose(ch, h, far)
    far_pair = act.cutoff_redecompose(ch, pair_far, u_star, far, eps=0.5)
    far_ok = np.allclose(far_pair.c_part.mat, pair_far.c_part.mat, atol=0)
    checks.append(_check("cutoff_anchor_zero", bool(zero_ok)))
    checks.append(_check("cutoff_far_unchanged", bool(far_ok)))

    v = _random_band_loop(rng, 1, m, band=3, amplitude=0.4)
    w = Loop(v.samples + 0.01 * _random_band_loop(rng, 1, m, band=2, amplitude=1.0).samples)
    probe = act.scale_lipschitz_probe(ch, h, v, w)
    checks.append(
        _check("scale_lipschitz", probe.passed, f"lhs {probe.lhs:.2e} vs rhs {probe.rhs_bound:.2e}")
    )

    dar = chart_mod.darboux_chart(1)
    h_eps = chart_mod.quadratic_hamiltonian(2, 0.3)  # h = eps |x|^2, monodromy = rotation by 2 eps
    gap, nondeg = act.check_nondegenerate(dar, h_eps, Loop.constant(np.zeros(2), 16))
    expected = 2 * abs(np.sin(0.3))
    checks.append(
        _check("monodromy_rotation_gap", abs(gap - expected) <= 1e-6 and nondeg, f"gap {gap:.8f}")
    )
    return _suite("action", checks)


def fredholm_suite(seed: int = 0) -> dict:
    rng = np.random.default_rng(seed)
    checks = []

    sup_ok = True
    for _ in range(20):
        size = int(rng.integers(2, 9))
        m = rng.standard_normal((size, size))
        m = m + m.T
        report = fred.rabier_probe(m, [0.1, 1.0, 10.0, 100.0, -0.5, -5.0])
        sup_ok = sup_ok and report.passed_symmetric_bound and report.reformulation_ok
    checks.append(_check("rabier_symmetric_bound", sup_ok))

    a = np.diag([1.0, -1.0, 2.0])
    k = 0.01 * rng.standard_normal((3, 3))
    base = fred.rabier_probe(a, [0.1, 1.0, 10.0, 100.0])
    chain = fred.compact_perturbation_constants(a, k, base.c0, base.r0, seed=seed)
    checks.append(
        _check("compact_perturbation_chain", chain.verified_on_grid, f"r1={chain.r1:.3f}")
    )

    tanh_report = fred.spectral_flow_synthetic(fred.builtin_synthetic_path("tanh"), 1e-6)
    const_report = fred.spectral_flow_synthetic(fred.builtin_synthetic_path("constant"), 1e-6)
    checks.append(_check("flow_tanh_is_one", tanh_report.flow == 1))
    checks.append(_check("flow_constant_is_zero", const_report.flow == 0))

    path = fred.builtin_synthetic_path("tanh")
    dense = fred.SyntheticPath(np.linspace(-4, 4, 127), path.eigen_functions)
    checks.append(
        _check("flow_grid_refinement_invariant", fred.spectral_flow_synthetic(dense, 1e-6).flow == 1)
    )

    add_ok = True
    for _ in range(3):
        p1, p2 = random_split_family(rng, dim=4)
        f1 = fred.spectral_flow_synthetic(p1, 1e-6).flow
        f2 = fred.spectral_flow_synthetic(p2, 1e-6).flow
        joint = fred.concatenate_synthetic(p1, p2)
        add_ok = add_ok and fred.spectral_flow_synthetic(joint, 1e-6).flow == f1 + f2
    checks.append(_check("flow_concatenation_additive", add_ok))

    dar = chart_mod.darboux_chart(1)
    u0 = Loop.constant(np.zeros(2), 16)
    path_c = fred.interpolate_path(u0, u0, np.linspace(-2, 2, 9))

    def h_family(s):
        # k = 0 eigenvalue pair -0.4 tanh(2s) crosses zero downward: flow -2
        return chart_mod.quadratic_hamiltonian(2, 0.2 * np.tanh(2 * s))

    flow01 = fred.spectral_flow(dar, h_family, path_c, 1e-6)
    cert = fred.index_of_d(path_c, flow01, chart=dar, hamiltonian=h_family)
    checks.append(
        _check(
            "chart_flow_level_agreement",
            flow01.flow == -2 and cert["flow_level01"] == cert["flow_level12"],
            f"flow {flow01.flow}",
        )
    )

    ker, coker = fred.index_zero_of_b_dt(dar, Loop.constant(np.zeros(2), 16))
    cub = chart_mod.cubic_chart()
    u = _random_band_loop(rng, 1, 16, band=3, amplitude=0.4)
    ker2, coker2 = fred.index_zero_of_b_dt(cub, u)
    checks.append(_check("b_dt_index_zero", ker == coker == 2 and ker2 == coker2))

    m = 16
    t = ls.time_grid(m)
    c_loop = np.stack([(2 + np.cos(2 * np.pi * tm)) * np.eye(2) for tm in t])
    delta = fred.semi_fredholm_delta(c_loop)
    xi = _random_band_loop(rng, 1, m, band=5, amplitude=1.0)
    lhs, rhs = fred.semi_fredholm_estimate(c_loop, xi)
    checks.append(
        _check("semi_fredholm_delta", abs(delta - 1.0) <= 1e-12 and lhs >= rhs * (1 - 1e-10))
    )
    return _suite("fredholm", checks)


SUITES = {
    "densela": densela_suite,
    "heron": densela_suite,  # Appendix-D alias
    "symplectic": symplectic_suite,
    "chart": chart_suite,
    "loopspace": loopspace_suite,
    "action": action_suite,
    "fredholm": fredholm_suite,
}

_CANONICAL = ["densela", "symplectic", "chart", "loopspace", "action", "fredholm"]


def run_suites(seed: int = 0, only: str | None = None) -> dict:
    if only is not None:
        if only not in SUITES:
            raise KeyError(f"unknown suite {only!r}; choose from {sorted(SUITES)}")
        names = [only if only != "heron" else "densela"]
    else:
        names = list(_CANONICAL)
    results = [SUITES[name](seed) for name in names]
    return {
        "seed": seed,
        "suites": results,
        "passed": all(r["passed"] for r in results),
    }
