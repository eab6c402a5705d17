"""Action functionals and their truncated Hessian operators.

The Hessian at a loop u acts on stacked samples as

    blockdiag(Omega(u_m)) D_spec + blockdiag(Lbar(., du_m)) - blockdiag(a_t(u_m))

with D_spec the spectral differentiation matrix (B^{-1} = Omega under the
fixed convention).  Uniform quadrature weights make D_spec exactly
antisymmetric, so all recorded asymmetry is aliasing from the curvature
blocks -- the quantity the decomposition machinery is about.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import chart as chart_mod
from . import loopspace as ls
from .chart import ChartSpec, Hamiltonian
from .errors import (
    Degenerate,
    IntegrationBlowup,
    InvalidInput,
    NoConvergence,
    OutOfDomain,
    SingularHessian,
)
from .loopspace import Loop
from .symplectic import det_threshold


# ---------------------------------------------------------------------------
# stacked-sample machinery


@lru_cache(maxsize=16)
def _full_basis(dim: int, num_samples: int) -> np.ndarray:
    """Euclidean-orthonormal mode basis of the stacked space, kron(Z, I_dim)."""
    z, _, _ = ls.mode_basis(num_samples)
    return np.kron(z, np.eye(dim))


@lru_cache(maxsize=16)
def _full_derivative(dim: int, num_samples: int) -> np.ndarray:
    return np.kron(ls.derivative_matrix(num_samples), np.eye(dim))


def _blockdiag(blocks: np.ndarray) -> np.ndarray:
    """(M, d, d) stack of blocks to the (Md, Md) block-diagonal matrix."""
    m, d, _ = blocks.shape
    out = np.zeros((m * d, m * d))
    for i in range(m):
        out[i * d : (i + 1) * d, i * d : (i + 1) * d] = blocks[i]
    return out


def flat_weights(dim: int, num_samples: int, r: float) -> np.ndarray:
    """Sobolev weight per flat mode-basis column (column j -> mode of j // dim)."""
    _, mode, _ = ls.mode_basis(num_samples)
    return np.repeat(ls.sobolev_weight(mode, r), dim)


def to_mode_basis(mat: np.ndarray, dim: int, num_samples: int) -> np.ndarray:
    z = _full_basis(dim, num_samples)
    return z.T @ mat @ z


def weighted_operator_norm(
    mat: np.ndarray, dim: int, num_samples: int, from_level: float, to_level: float
) -> float:
    """Operator norm of a stacked-sample matrix as a map H_from -> H_to."""
    a_mode = to_mode_basis(mat, dim, num_samples)
    w_from = flat_weights(dim, num_samples, from_level)
    w_to = flat_weights(dim, num_samples, to_level)
    weighted = np.sqrt(w_to)[:, None] * a_mode / np.sqrt(w_from)[None, :]
    return float(np.linalg.norm(weighted, 2))


@dataclass(frozen=True)
class OperatorMatrix:
    """Dense truncated loop-space operator on stacked samples."""

    kind: str  # one of A0, A, F, C, aTerm
    half_dim: int
    num_samples: int
    mat: np.ndarray
    asymmetry_defect: float

    @property
    def size(self) -> int:
        return self.mat.shape[0]

    def apply(self, u: Loop) -> Loop:
        return Loop.from_stacked(self.mat @ u.stacked(), 2 * self.half_dim)


def _make_operator(kind: str, half_dim: int, num_samples: int, mat: np.ndarray) -> OperatorMatrix:
    defect = float(np.linalg.norm(mat - mat.T, 2))
    return OperatorMatrix(
        kind=kind, half_dim=half_dim, num_samples=num_samples, mat=mat, asymmetry_defect=defect
    )


def resolved_symmetric_eigenvalues(op: OperatorMatrix, level: str = "01") -> np.ndarray:
    """Eigenvalues of the symmetrized compression to the resolved modes.

    level "01": quadrature-L^2 symmetrization; level "12": conjugate by the
    H_1 weights first, mirroring the operator one Sobolev level up.
    """
    dim = 2 * op.half_dim
    res = ls.resolved_flat_indices(dim, op.num_samples)
    a_mode = to_mode_basis(op.mat, dim, op.num_samples)[np.ix_(res, res)]
    if level == "12":
        w1 = flat_weights(dim, op.num_samples, 1.0)[res]
        a_mode = np.sqrt(w1)[:, None] * a_mode / np.sqrt(w1)[None, :]
    elif level != "01":
        raise InvalidInput(f"unknown level {level!r}")
    return np.linalg.eigvalsh(0.5 * (a_mode + a_mode.T))


def kernel_dimension(op: OperatorMatrix, tol: float = 1e-8, level: str = "01") -> int:
    eigs = resolved_symmetric_eigenvalues(op, level)
    return int(np.sum(np.abs(eigs) <= tol))


def band_asymmetry_defect(op: OperatorMatrix, band: int | None = None) -> float:
    """H1-weighted norm of the antisymmetric part compressed to modes <= band.

    This is the constant C(M) in |<xi, A eta>_0 - <A xi, eta>_0| <=
    C(M) |xi|_1 |eta|_1 for band-limited arguments (band defaults to M/4); the
    raw matrix defect is dominated by Nyquist-fold aliasing of the curvature
    blocks and does not see the integration-by-parts cancellation.
    """
    dim = 2 * op.half_dim
    m = op.num_samples
    band = m // 4 if band is None else band
    _, mode, _ = ls.mode_basis(m)
    keep_cols = np.flatnonzero(mode <= band)
    flat = (keep_cols[:, None] * dim + np.arange(dim)[None, :]).reshape(-1)
    e_mode = to_mode_basis(op.mat - op.mat.T, dim, m)[np.ix_(flat, flat)]
    w1 = flat_weights(dim, m, 1.0)[flat]
    weighted = e_mode / np.sqrt(w1)[:, None] / np.sqrt(w1)[None, :]
    return 0.5 * float(np.linalg.norm(weighted, 2))


def hessian_report(op: OperatorMatrix, eig_tol: float = 1e-8) -> dict:
    """JSON-ready spectral summary; spectrum excludes the Nyquist artifact block."""
    eigs = resolved_symmetric_eigenvalues(op)
    return {
        "kind": op.kind,
        "size": op.size,
        "asymmetryDefect": op.asymmetry_defect,
        "eigenvalues": [float(v) for v in eigs],
        "kernelDim": int(np.sum(np.abs(eigs) <= eig_tol)),
    }


def operator_csv(op: OperatorMatrix) -> str:
    lines = [",".join(repr(float(v)) for v in row) for row in op.mat]
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# pointwise chart data along a loop


def _require_in_domain(chart: ChartSpec, u: Loop) -> None:
    for x in u.samples:
        if not chart.contains(x):
            raise OutOfDomain(f"loop sample {x} leaves the chart domain")


def _omega_blocks(chart: ChartSpec, u: Loop) -> np.ndarray:
    blocks = np.stack([chart.omega(x) for x in u.samples])
    dets = np.linalg.det(blocks)
    for x, det, om in zip(u.samples, dets, blocks):
        if abs(det) <= det_threshold(om):
            raise Degenerate(f"form degenerate along the loop at {x}")
    return blocks


def _l_blocks(chart: ChartSpec, u: Loop) -> np.ndarray:
    """Multiplication blocks S_m[j, k] = sum_i L[k, j, i](u_m) du_i(m)."""
    udot = ls.spectral_derivative(u)
    blocks = []
    for x, xdot in zip(u.samples, udot.samples):
        tensor = chart_mod.l_tensor_at(chart, x).values
        blocks.append(np.einsum("kji,i->jk", tensor, xdot))
    return np.stack(blocks)


def _hamiltonian_blocks(h: Hamiltonian, u: Loop) -> np.ndarray:
    tgrid = ls.time_grid(u.num_samples)
    return np.stack([chart_mod.hessian_of_h(h, t, x) for t, x in zip(tgrid, u.samples)])


# ---------------------------------------------------------------------------
# values, gradients, Hessians


def action_value(chart: ChartSpec, h: Hamiltonian | None, u: Loop) -> float:
    """Quadrature of lambda_u(du) - h_t(u) over the sample grid."""
    _require_in_domain(chart, u)
    udot = ls.spectral_derivative(u)
    lam = np.stack([chart.lambda_value(x) for x in u.samples])
    total = float(np.mean(np.sum(lam * udot.samples, axis=1)))
    if h is not None:
        tgrid = ls.time_grid(u.num_samples)
        total -= float(np.mean([h.value(t, x) for t, x in zip(tgrid, u.samples)]))
    return total


def gradient(chart: ChartSpec, h: Hamiltonian | None, u: Loop) -> Loop:
    """Pointwise B^{-1}(du - X_h(u)) = Omega(u) du - grad h_t(u)."""
    _require_in_domain(chart, u)
    omegas = _omega_blocks(chart, u)
    udot = ls.spectral_derivative(u)
    vals = np.einsum("mji,mi->mj", omegas, udot.samples)
    if h is not None:
        tgrid = ls.time_grid(u.num_samples)
        vals -= np.stack([h.grad(t, x) for t, x in zip(tgrid, u.samples)])
    return Loop(vals)


def assemble_hessian(chart: ChartSpec, h: Hamiltonian | None, u: Loop) -> OperatorMatrix:
    """Dense truncated Hessian; kind A0 without perturbation, A with."""
    _require_in_domain(chart, u)
    dim = u.dim
    mat = _blockdiag(_omega_blocks(chart, u)) @ _full_derivative(dim, u.num_samples)
    mat += _blockdiag(_l_blocks(chart, u))
    kind = "A0"
    if h is not None:
        mat -= _blockdiag(_hamiltonian_blocks(h, u))
        kind = "A"
    return _make_operator(kind, u.half_dim, u.num_samples, mat)


def second_derivative_quadrature(
    chart: ChartSpec, h: Hamiltonian | None, u: Loop, xi: Loop, eta: Loop
) -> float:
    """Direct quadrature of the bilinear form omega(xi, deta) + L(eta, xi, du) - d2h(eta, xi)."""
    _require_in_domain(chart, u)
    omegas = _omega_blocks(chart, u)
    etadot = ls.spectral_derivative(eta)
    udot = ls.spectral_derivative(u)
    vals = np.einsum("mj,mji,mi->m", xi.samples, omegas, etadot.samples)
    for m, x in enumerate(u.samples):
        tensor = chart_mod.l_tensor_at(chart, x).values
        vals[m] += np.einsum(
            "kji,k,j,i->", tensor, eta.samples[m], xi.samples[m], udot.samples[m]
        )
    if h is not None:
        tgrid = ls.time_grid(u.num_samples)
        for m, (t, x) in enumerate(zip(tgrid, u.samples)):
            a = chart_mod.hessian_of_h(h, t, x)
            vals[m] -= float(eta.samples[m] @ a @ xi.samples[m])
    return float(np.mean(vals))


# ---------------------------------------------------------------------------
# decomposition into continuous and lower-order parts


@dataclass(frozen=True)
class DecompositionPair:
    """Split A = F + C: F keeps all differentiation, C is pure multiplication."""

    f_part: OperatorMatrix
    c_part: OperatorMatrix
    order: float = 0.75  # any order in (1/2, 1) works for the multiplication part


def decompose(chart: ChartSpec, h: Hamiltonian | None, u: Loop) -> DecompositionPair:
    _require_in_domain(chart, u)
    dim = u.dim
    f_mat = _blockdiag(_omega_blocks(chart, u)) @ _full_derivative(dim, u.num_samples)
    if h is not None:
        f_mat -= _blockdiag(_hamiltonian_blocks(h, u))
    c_mat = _blockdiag(_l_blocks(chart, u))
    return DecompositionPair(
        f_part=_make_operator("F", u.half_dim, u.num_samples, f_mat),
        c_part=_make_operator("C", u.half_dim, u.num_samples, c_mat),
    )


def smooth_bump(x: float, eps_sq: float) -> float:
    """Smooth cutoff: 1 on (-inf, 0], 0 on [eps_sq, inf), glued by exp(-1/t)."""
    if x <= 0.0:
        return 1.0
    if x >= eps_sq:
        return 0.0
    tau = x / eps_sq

    def f(t):
        return np.exp(-1.0 / t) if t > 0 else 0.0

    return float(f(1.0 - tau) / (f(1.0 - tau) + f(tau)))


def cutoff_redecompose(
    chart: ChartSpec,
    pair: DecompositionPair,
    u_star: Loop,
    u: Loop,
    eps: float,
    a_op: OperatorMatrix | None = None,
) -> DecompositionPair:
    """Re-split A = F' + C' so that C' vanishes identically at the anchor u_star.

    Subtracts beta(|u_star - u|_1^2) C(u_star) from C and adds it to F; beta is
    the smooth bump above, so at u = u_star the correction is exactly C(u_star).
    """
    if eps <= 0:
        raise InvalidInput("eps must be positive")
    if u.num_samples != u_star.num_samples or u.dim != u_star.dim:
        raise InvalidInput("anchor and evaluation loops must share the discretization")
    dist_sq = ls.sobolev_norm(Loop(u.samples - u_star.samples), 1) ** 2
    beta = smooth_bump(dist_sq, eps * eps)
    c_star = _blockdiag(_l_blocks(chart, u_star))
    f_new = pair.f_part.mat + beta * c_star
    c_new = pair.c_part.mat - beta * c_star
    if a_op is not None:
        drift = float(np.max(np.abs(f_new + c_new - a_op.mat)))
        if drift > 1e-12 * max(1.0, float(np.max(np.abs(a_op.mat)))):
            raise InvalidInput(f"re-decomposition drifted from A by {drift:.3e}")
    return DecompositionPair(
        f_part=_make_operator("F", u.half_dim, u.num_samples, f_new),
        c_part=_make_operator("C", u.half_dim, u.num_samples, c_new),
        order=pair.order,
    )


# ---------------------------------------------------------------------------
# scale Lipschitz probe for the multiplication part


@dataclass(frozen=True)
class ScaleLipschitzReport:
    lhs: float
    rhs_bound: float
    kappa: float
    tensor_bound: float
    passed: bool
    note: str


def _tensor_bound_over_box(chart: ChartSpec, loops: list[Loop], inflate: float, rng_samples: int = 256) -> float:
    """Frobenius bound for |Lbar| and |dLbar| sampled over the inflated
    bounding box of the loop images.  Frobenius dominates the operator norm,
    so the resulting constant is conservative (reported, never tightened)."""
    pts = np.vstack([u.samples for u in loops])
    lo, hi = pts.min(axis=0), pts.max(axis=0)
    span = np.maximum(hi - lo, 1e-12)
    lo, hi = lo - inflate * span, hi + inflate * span
    dim = pts.shape[1]
    corners = np.array(
        [[lo[j] if (i >> j) & 1 == 0 else hi[j] for j in range(dim)] for i in range(2**dim)]
    )
    rng = np.random.default_rng(20240901)
    interior = lo + rng.random((rng_samples, dim)) * (hi - lo)
    best = 0.0
    for x in np.vstack([corners, interior, pts]):
        lt = chart_mod.l_tensor_at(chart, x).values
        dlt = chart_mod.l_tensor_gradient(chart, x)
        best = max(best, float(np.linalg.norm(lt)), float(np.linalg.norm(dlt)))
    return best


def scale_lipschitz_probe(
    chart: ChartSpec, h: Hamiltonian | None, v: Loop, w: Loop, inflate: float = 0.1
) -> ScaleLipschitzReport:
    """Check ||C^v - C^w||_{H1->H1} <= kappa (|v-w|_2 + min(|v|_2, |w|_2) |v-w|_1).

    kappa^2 = 7 c^2 (7 + 4 |u|_1^2) with c the sampled tensor bound and |u|_1
    the larger of the two base norms.
    """
    _require_in_domain(chart, v)
    _require_in_domain(chart, w)
    if v.num_samples != w.num_samples or v.dim != w.dim:
        raise InvalidInput("loops must share the discretization")
    diff_mat = _blockdiag(_l_blocks(chart, v)) - _blockdiag(_l_blocks(chart, w))
    lhs = weighted_operator_norm(diff_mat, v.dim, v.num_samples, 1.0, 1.0)

    c = _tensor_bound_over_box(chart, [v, w], inflate)
    base = max(ls.sobolev_norm(v, 1), ls.sobolev_norm(w, 1))
    kappa = float(np.sqrt(7.0 * c * c * (7.0 + 4.0 * base * base)))
    diff = Loop(v.samples - w.samples)
    rhs = kappa * (
        ls.sobolev_norm(diff, 2)
        + min(ls.sobolev_norm(v, 2), ls.sobolev_norm(w, 2)) * ls.sobolev_norm(diff, 1)
    )
    return ScaleLipschitzReport(
        lhs=lhs,
        rhs_bound=rhs,
        kappa=kappa,
        tensor_bound=c,
        passed=bool(lhs <= rhs * (1 + 1e-12)),
        note="tensor bound is a box-sampled Frobenius estimate; probe is conservative",
    )


# ---------------------------------------------------------------------------
# critical points and monodromy


def find_critical_point(
    chart: ChartSpec, h: Hamiltonian, guess: Loop, tol: float = 1e-10, max_iter: int = 50
) -> Loop:
    """Damped Newton on the truncated gradient, Hessian as the Jacobian."""
    u = guess
    res = ls.sobolev_norm(gradient(chart, h, u), 0)
    for _ in range(max_iter):
        if res <= tol and _orbit_residual(chart, h, u) <= 10 * tol:
            return u
        a = assemble_hessian(chart, h, u).mat
        svals = np.linalg.svd(a, compute_uv=False)
        if svals[-1] <= 1e-12 * svals[0]:
            raise SingularHessian("Hessian numerically singular; degenerate critical point")
        step = np.linalg.solve(a, -gradient(chart, h, u).stacked())
        lam = 1.0
        while lam >= 1.0 / 64.0:
            cand = Loop.from_stacked(u.stacked() + lam * step, u.dim)
            try:
                cand_res = ls.sobolev_norm(gradient(chart, h, cand), 0)
            except (OutOfDomain, Degenerate):
                lam *= 0.5
                continue
            if cand_res < res:
                u, res = cand, cand_res
                break
            lam *= 0.5
        else:
            raise NoConvergence(f"damping stalled at gradient norm {res:.3e}")
    if res <= tol and _orbit_residual(chart, h, u) <= 10 * tol:
        return u
    raise NoConvergence(f"gradient norm {res:.3e} above {tol:.1e} after {max_iter} iterations")


def _orbit_residual(chart: ChartSpec, h: Hamiltonian, u: Loop) -> float:
    """sup_m |du(t_m) - X_{h_t}(u(t_m))|."""
    udot = ls.spectral_derivative(u)
    tgrid = ls.time_grid(u.num_samples)
    worst = 0.0
    for t, x, xd in zip(tgrid, u.samples, udot.samples):
        field = chart_mod.hamiltonian_vector_field(chart, h, t, x)
        worst = max(worst, float(np.max(np.abs(xd - field))))
    return worst


def _linearized_field(chart: ChartSpec, h: Hamiltonian, t: float, x: np.ndarray) -> np.ndarray:
    """d_x X_{h_t}(x) = Omega^{-1} (a_t - dOmega[., l] X)."""
    omega = chart.omega(x)
    grad_h = h.grad(t, x)
    field = np.linalg.solve(omega, grad_h)
    d_omega = chart.d_omega(x)
    correction = np.einsum("lji,i->jl", d_omega, field)
    return np.linalg.solve(omega, h.hess(t, x) - correction)


def check_nondegenerate(
    chart: ChartSpec,
    h: Hamiltonian,
    u: Loop,
    tol_gap: float = 1e-8,
    refine: int = 32,
) -> tuple[float, bool]:
    """Monodromy gap: smallest singular value of Y(1) - I for the linearized flow.

    Integrates dY/dt = dX_{h_t}(u(t)) Y by classical RK4 on a grid refined by
    `refine` relative to the loop samples (band-limited evaluation in between).
    """
    _require_in_domain(chart, u)
    steps = refine * u.num_samples
    fine = ls.resample(u, 2 * steps)  # holds u at every half-step node
    dim = u.dim
    y = np.eye(dim)
    dt = 1.0 / steps

    def rhs(idx: int, mat: np.ndarray) -> np.ndarray:
        t = idx / (2.0 * steps)
        x = fine.samples[idx % (2 * steps)]
        return _linearized_field(chart, h, t, x) @ mat

    for j in range(steps):
        k1 = rhs(2 * j, y)
        k2 = rhs(2 * j + 1, y + 0.5 * dt * k1)
        k3 = rhs(2 * j + 1, y + 0.5 * dt * k2)
        k4 = rhs(2 * j + 2, y + dt * k3)
        y = y + dt / 6.0 * (k1 + 2 * k2 + 2 * k3 + k4)
        if not np.all(np.isfinite(y)) or np.max(np.abs(y)) > 1e12:
            raise IntegrationBlowup("linearized flow diverged")
    gap = float(np.linalg.svd(y - np.eye(dim), compute_uv=False)[-1])
    return gap, gap > tol_gap
