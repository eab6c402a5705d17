"""Operator-theoretic diagnostics at truncation.

Spectral flow along connecting paths (branch continuation with local grid
bisection, cross-checked against negative-eigenvalue counts), resolvent
condition probes with the compact-perturbation constant chain, compactness
of multiplication operators against the projection-norm bound, and the
semi-Fredholm estimates for B^{-1} d/dt.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np
from scipy.sparse.linalg import LinearOperator, svds

from . import action as act
from . import chart as chart_mod
from . import loopspace as ls
from .chart import ChartSpec, Hamiltonian
from .densela import shifted_resolvent_norm, svd_values
from .errors import (
    AmbiguousCrossing,
    DegenerateEndpoint,
    FloerlabError,
    HypothesisFailed,
    InvalidInput,
    LevelMismatch,
    NonDecayingC,
    SingularSample,
    SingularShift,
)
from .loopspace import Loop


def worker_count() -> int:
    """Parallelism cap: FLOERLAB_THREADS, else the CPU count."""
    env = os.environ.get("FLOERLAB_THREADS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            pass
    return max(1, os.cpu_count() or 1)


# ---------------------------------------------------------------------------
# connecting paths


@dataclass
class ConnectingPath:
    """s-indexed family of loops with constant tails at both ends."""

    s_grid: np.ndarray
    loops: list[Loop]
    u_minus: Loop
    u_plus: Loop

    def __post_init__(self):
        self.s_grid = np.asarray(self.s_grid, dtype=float)
        if self.s_grid.ndim != 1 or len(self.loops) != self.s_grid.size:
            raise InvalidInput("s grid and loop list must align")
        if np.any(np.diff(self.s_grid) <= 0):
            raise InvalidInput("s grid must be strictly increasing")
        for end, target in ((0, self.u_minus), (-1, self.u_plus)):
            gap = ls.sobolev_norm(Loop(self.loops[end].samples - target.samples), 1)
            if gap > 1e-10:
                raise InvalidInput(f"path endpoint differs from asymptotic loop by {gap:.3e} in H1")

    @property
    def num_samples(self) -> int:
        return self.loops[0].num_samples

    @property
    def dim(self) -> int:
        return self.loops[0].dim

    def loop_at(self, s: float) -> Loop:
        """Piecewise-linear interpolation in s, constant beyond the grid."""
        grid = self.s_grid
        if s <= grid[0]:
            return self.loops[0]
        if s >= grid[-1]:
            return self.loops[-1]
        i = int(np.searchsorted(grid, s)) - 1
        w = (s - grid[i]) / (grid[i + 1] - grid[i])
        return Loop((1 - w) * self.loops[i].samples + w * self.loops[i + 1].samples)

    def tail_time(self, tol: float = 1e-12) -> float:
        """Smallest T with the sampled path constant for |s| >= T."""
        t_lo = abs(self.s_grid[0])
        for i in range(len(self.loops) - 1):
            if np.max(np.abs(self.loops[i + 1].samples - self.loops[i].samples)) > tol:
                t_lo = abs(self.s_grid[i])
                break
        t_hi = abs(self.s_grid[-1])
        for i in range(len(self.loops) - 1, 0, -1):
            if np.max(np.abs(self.loops[i].samples - self.loops[i - 1].samples)) > tol:
                t_hi = abs(self.s_grid[i])
                break
        return max(t_lo, t_hi)


def smoothstep_quintic(tau: np.ndarray) -> np.ndarray:
    """C^2 ramp 0 -> 1 on [0, 1]."""
    t = np.clip(tau, 0.0, 1.0)
    return t**3 * (10.0 - 15.0 * t + 6.0 * t * t)


def interpolate_path(
    u_minus: Loop, u_plus: Loop, s_grid: np.ndarray, ramp_interval: tuple[float, float] = (-1.0, 1.0)
) -> ConnectingPath:
    """Connecting path u_s = u_- + phi(s) (u_+ - u_-), constant outside the ramp."""
    s_grid = np.asarray(s_grid, dtype=float)
    a, b = ramp_interval
    loops = []
    for s in s_grid:
        phi = float(smoothstep_quintic((s - a) / (b - a)))
        loops.append(Loop((1 - phi) * u_minus.samples + phi * u_plus.samples))
    return ConnectingPath(s_grid=s_grid, loops=loops, u_minus=u_minus, u_plus=u_plus)


def save_path(directory: str, path: ConnectingPath) -> None:
    os.makedirs(directory, exist_ok=True)
    with open(os.path.join(directory, "sgrid.csv"), "w") as fh:
        fh.write("\n".join(repr(float(s)) for s in path.s_grid) + "\n")
    for i, loop in enumerate(path.loops):
        ls.save_loop(os.path.join(directory, f"loop_{i:04d}.csv"), loop)


def load_path(directory: str) -> ConnectingPath:
    with open(os.path.join(directory, "sgrid.csv")) as fh:
        s_grid = np.array([float(v) for v in fh.read().split()])
    loops = [
        ls.load_loop(os.path.join(directory, f"loop_{i:04d}.csv")) for i in range(s_grid.size)
    ]
    return ConnectingPath(s_grid=s_grid, loops=loops, u_minus=loops[0], u_plus=loops[-1])


# ---------------------------------------------------------------------------
# synthetic operator paths


@dataclass
class SyntheticPath:
    """Operator family U diag(f_j(s)) U^T with growth weights in the U-basis.

    The weights commute with the family by construction, so both Sobolev-level
    representations coincide; the substantive level comparison happens on
    chart paths.
    """

    s_grid: np.ndarray
    eigen_functions: Callable[[float], np.ndarray]  # s -> diagonal values
    basis: np.ndarray | None = None
    weights: np.ndarray | None = None

    def matrix(self, s: float) -> np.ndarray:
        vals = np.asarray(self.eigen_functions(float(s)), dtype=float)
        if self.basis is None:
            return np.diag(vals)
        return self.basis @ np.diag(vals) @ self.basis.T


def builtin_synthetic_path(name: str) -> SyntheticPath:
    grid = np.linspace(-4.0, 4.0, 64)
    if name == "constant":
        return SyntheticPath(grid, lambda s: np.array([1.0, -2.0, 3.0, 0.5]))
    if name == "tanh":
        return SyntheticPath(grid, lambda s: np.array([np.tanh(s), 1.0, 2.0, 3.0]))
    if name == "degenerate":
        grid2 = np.linspace(-2.0, 2.0, 33)
        return SyntheticPath(grid2, lambda s: np.array([4.0 - s * s, 1.0, 2.0]))
    raise InvalidInput(f"unknown builtin path {name!r}; use constant, tanh or degenerate")


def concatenate_synthetic(p1: SyntheticPath, p2: SyntheticPath) -> SyntheticPath:
    """Join two families; p1 must end where p2 begins (same junction values)."""
    end1 = p1.eigen_functions(float(p1.s_grid[-1]))
    start2 = p2.eigen_functions(float(p2.s_grid[0]))
    if not np.allclose(end1, start2, atol=1e-12):
        raise InvalidInput("junction operators disagree")
    shift = p1.s_grid[-1] - p2.s_grid[0]
    joint = np.concatenate([p1.s_grid, p2.s_grid[1:] + shift])

    def f(s: float) -> np.ndarray:
        if s <= p1.s_grid[-1]:
            return p1.eigen_functions(s)
        return p2.eigen_functions(s - shift)

    if p1.basis is not None or p2.basis is not None:
        if p1.basis is None or p2.basis is None or not np.allclose(p1.basis, p2.basis):
            raise InvalidInput("concatenation requires a shared basis")
    return SyntheticPath(joint, f, basis=p1.basis, weights=p1.weights)


# ---------------------------------------------------------------------------
# spectral flow core


@dataclass
class SpectralFlowReport:
    crossings: list[tuple[float, int, int]]  # (s, branch id, sign)
    flow: int
    endpoint_gaps: tuple[float, float]
    s_values: np.ndarray
    branch_values: np.ndarray  # (len(s_values), tracked branches)
    branch_ids: np.ndarray
    level: str
    cross_tol: float
    max_asymmetry_defect: float = 0.0


_ZERO_EPS = 1e-13


def _flow_core(
    evaluate: Callable[[float], np.ndarray],
    s_grid: np.ndarray,
    cross_tol: float,
    window: int = 8,
    max_depth: int = 12,
    level: str = "01",
) -> SpectralFlowReport:
    s_grid = np.asarray(s_grid, dtype=float)
    if s_grid.size < 2:
        raise InvalidInput("need at least two s samples")

    def eigs_at(s: float) -> np.ndarray:
        return np.linalg.eigvalsh(evaluate(s))

    def clean_node(s: float, width: float, e: np.ndarray | None = None) -> tuple[float, np.ndarray]:
        """Evaluate at s, nudging off exact zero eigenvalues (ambiguous signs).

        A zero that survives the nudge budget means an eigenvalue branch sits
        flat on zero: the crossing count is genuinely undefined there.
        """
        if e is None:
            e = eigs_at(s)
        scale = max(1.0, float(np.max(np.abs(e))))
        step = 1e-4 * width
        shift = 0.0
        while np.min(np.abs(e)) <= _ZERO_EPS * scale:
            shift += step
            if shift > 0.02 * width:
                raise AmbiguousCrossing(
                    f"eigenvalue pinned at zero near s = {s:.6g}; flow undefined"
                )
            e = eigs_at(s + shift)
        return s + shift, e

    span = float(s_grid[-1] - s_grid[0])
    with ThreadPoolExecutor(max_workers=worker_count()) as pool:
        spectra = list(pool.map(eigs_at, s_grid))
    nodes: list[tuple[float, np.ndarray]] = []
    for i, (s, e) in enumerate(zip(s_grid, spectra)):
        scale = max(1.0, float(np.max(np.abs(e))))
        if 0 < i < s_grid.size - 1 and np.min(np.abs(e)) <= _ZERO_EPS * scale:
            nodes.append(clean_node(float(s), span, e))
        else:
            nodes.append((float(s), e))

    gap_lo = float(np.min(np.abs(nodes[0][1])))
    gap_hi = float(np.min(np.abs(nodes[-1][1])))
    if gap_lo <= cross_tol or gap_hi <= cross_tol:
        raise DegenerateEndpoint(
            f"asymptotic spectral gaps ({gap_lo:.3e}, {gap_hi:.3e}) not above {cross_tol:.1e}"
        )

    def refine(s0, e0, s1, e1, depth):
        # bisect while a sign-changing branch still moves by more than the
        # crossing tolerance; the depth cap keeps steep clean crossings cheap
        moving = np.flatnonzero((e0 * e1 < 0) & (np.abs(e1 - e0) > cross_tol))
        if moving.size == 0 or depth == 0:
            return []
        sm, em = clean_node(0.5 * (s0 + s1), s1 - s0)
        return refine(s0, e0, sm, em, depth - 1) + [(sm, em)] + refine(sm, em, s1, e1, depth - 1)

    refined: list[tuple[float, np.ndarray]] = [nodes[0]]
    for (s0, e0), (s1, e1) in zip(nodes[:-1], nodes[1:]):
        refined.extend(refine(s0, e0, s1, e1, max_depth))
        refined.append((s1, e1))

    dim = refined[0][1].size
    e_first, e_last = refined[0][1], refined[-1][1]
    neg_diff = int(np.sum(e_first < 0) - np.sum(e_last < 0))

    w = min(window, dim)
    while True:
        branch_ids = np.argsort(np.abs(e_first))[:w]
        crossings = []
        for (s0, e0), (s1, e1) in zip(refined[:-1], refined[1:]):
            for j in branch_ids:
                if e0[j] * e1[j] < 0:
                    s_star = s0 + (0.0 - e0[j]) / (e1[j] - e0[j]) * (s1 - s0)
                    sign = 1 if e1[j] > e0[j] else -1
                    crossings.append((float(s_star), int(j), sign))
        flow = int(sum(c[2] for c in crossings))
        if flow == neg_diff:
            break
        if w >= dim:
            raise AmbiguousCrossing(
                f"tracked flow {flow} never matched the counting oracle {neg_diff}"
            )
        w = min(dim, 2 * w)  # a crossing branch left the window: widen it

    crossings.sort()
    s_values = np.array([s for s, _ in refined])
    branch_values = np.array([[e[j] for j in branch_ids] for _, e in refined])
    return SpectralFlowReport(
        crossings=crossings,
        flow=flow,
        endpoint_gaps=(gap_lo, gap_hi),
        s_values=s_values,
        branch_values=branch_values,
        branch_ids=np.asarray(branch_ids),
        level=level,
        cross_tol=cross_tol,
    )


band_asymmetry_defect = act.band_asymmetry_defect


def _chart_family(
    chart: ChartSpec,
    hamiltonian,
    path: ConnectingPath,
    level: str,
    cross_tol: float,
    defects: list[float],
) -> Callable[[float], np.ndarray]:
    dim = path.dim
    m = path.num_samples
    res = ls.resolved_flat_indices(dim, m)
    w1 = act.flat_weights(dim, m, 1.0)[res]

    def evaluate(s: float) -> np.ndarray:
        h_s = hamiltonian(s) if callable(hamiltonian) else hamiltonian
        op = act.assemble_hessian(chart, h_s, path.loop_at(s))
        defect = band_asymmetry_defect(op)
        defects.append(defect)
        if defect >= cross_tol / 10.0:
            raise HypothesisFailed(
                f"asymmetry defect {defect:.3e} too large for crossing tolerance {cross_tol:.1e}"
            )
        a_mode = act.to_mode_basis(op.mat, dim, m)[np.ix_(res, res)]
        if level == "12":
            a_mode = np.sqrt(w1)[:, None] * a_mode / np.sqrt(w1)[None, :]
        return 0.5 * (a_mode + a_mode.T)

    return evaluate


def spectral_flow(
    chart: ChartSpec,
    hamiltonian,
    path: ConnectingPath,
    cross_tol: float = 1e-6,
    level: str = "01",
    window: int = 8,
) -> SpectralFlowReport:
    """Signed eigenvalue crossings of s -> symmetrized Hessian along the path.

    `hamiltonian` may be a fixed Hamiltonian, None, or a callable s -> Hamiltonian
    for perturbation-driven paths.
    """
    defects: list[float] = []
    evaluate = _chart_family(chart, hamiltonian, path, level, cross_tol, defects)
    report = _flow_core(evaluate, path.s_grid, cross_tol, window=window, level=level)
    report.max_asymmetry_defect = max(defects, default=0.0)
    return report


def spectral_flow_synthetic(
    path: SyntheticPath, cross_tol: float = 1e-6, level: str = "01", window: int = 8
) -> SpectralFlowReport:
    return _flow_core(path.matrix, path.s_grid, cross_tol, window=window, level=level)


def index_of_d(
    path: ConnectingPath | SyntheticPath,
    flow_report: SpectralFlowReport,
    chart: ChartSpec | None = None,
    hamiltonian=None,
    cross_tol: float | None = None,
) -> dict:
    """Fredholm index certificate: ind = -flow, checked across both levels."""
    tol = flow_report.cross_tol if cross_tol is None else cross_tol
    if isinstance(path, SyntheticPath):
        level2 = spectral_flow_synthetic(path, tol, level="12")
    else:
        if chart is None:
            raise InvalidInput("chart paths need the chart to recompute at level 1/2")
        level2 = spectral_flow(chart, hamiltonian, path, tol, level="12")
    if level2.flow != flow_report.flow:
        raise LevelMismatch(
            f"flow {flow_report.flow} at level 0/1 vs {level2.flow} at level 1/2"
        )
    return {
        "index": -flow_report.flow,
        "flow_level01": flow_report.flow,
        "flow_level12": level2.flow,
        "sign_convention": "upward crossing counts +1; ind(d/ds + A) = -flow",
        "endpoint_gaps": list(flow_report.endpoint_gaps),
    }


def branch_trace_csv(report: SpectralFlowReport) -> str:
    lines = ["s,branch,lambda"]
    for s, row in zip(report.s_values, report.branch_values):
        for j, val in zip(report.branch_ids, row):
            lines.append(f"{s!r},{int(j)},{val!r}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# Rabier condition probes


@dataclass
class RabierReport:
    alpha_grid: np.ndarray
    resolvent_norms: np.ndarray  # inf where the shift was singular
    sup_norm: float
    c0: float  # lower-bound constant 1 / sup_norm
    r0: float
    passed_symmetric_bound: bool
    singular_alphas: list[float] = field(default_factory=list)
    reformulation_ok: bool = True


def rabier_probe(a: np.ndarray | act.OperatorMatrix, alpha_grid: Sequence[float]) -> RabierReport:
    """Sweep ||alpha (A - i alpha)^{-1}|| over the grid and derive C0 = 1/sup.

    Also verifies the equivalent lower bound sigma_min(A - i alpha) >= C0 |alpha|
    at every grid point.
    """
    mat = a.mat if isinstance(a, act.OperatorMatrix) else np.asarray(a, dtype=float)
    alphas = np.asarray(list(alpha_grid), dtype=float)
    if np.any(alphas == 0):
        raise InvalidInput("alpha grid must avoid zero")
    norms = np.empty(alphas.size)
    singular = []
    for i, alpha in enumerate(alphas):
        try:
            norms[i] = shifted_resolvent_norm(mat, float(alpha))
        except SingularShift:
            norms[i] = np.inf
            singular.append(float(alpha))
    finite = norms[np.isfinite(norms)]
    sup_norm = float(np.max(finite)) if finite.size else np.inf
    c0 = 1.0 / sup_norm if np.isfinite(sup_norm) and sup_norm > 0 else 0.0

    symmetric = bool(np.max(np.abs(mat - mat.T)) <= 1e-10 * max(1.0, np.max(np.abs(mat))))
    passed_sym = bool(symmetric and sup_norm <= 1.0 + 1e-10)

    reformulation_ok = True
    eye = np.eye(mat.shape[0])
    for alpha in alphas:
        smin = float(np.linalg.svd(mat - 1j * alpha * eye, compute_uv=False)[-1])
        if smin < c0 * abs(alpha) * (1 - 1e-10):
            reformulation_ok = False
    return RabierReport(
        alpha_grid=alphas,
        resolvent_norms=norms,
        sup_norm=sup_norm,
        c0=c0,
        r0=float(np.min(np.abs(alphas))),
        passed_symmetric_bound=passed_sym,
        singular_alphas=singular,
        reformulation_ok=reformulation_ok,
    )


@dataclass
class CompactPerturbationReport:
    eps: float
    r1: float
    c1: float
    b_of_eps: float
    verified_on_grid: bool
    checked_alphas: np.ndarray


def compact_perturbation_constants(
    a: np.ndarray,
    k: np.ndarray,
    c0: float,
    r0: float,
    a_bound_samples: int | np.ndarray = 64,
    alpha_grid: Sequence[float] | None = None,
    seed: int = 0,
) -> CompactPerturbationReport:
    """Constant chain for perturbing a Rabier operator by K.

    eps = min(1/2, C0/4), r1 = max(r0, 1/2 + 4 b(eps)/C0), C1 = C0/8; b(eps)
    is the tightest offset with |K xi| <= eps |A xi| + b over the sampled unit
    vectors (the least-squares fit in the sup sense: any smaller offset is
    violated by some sample).  Verifies sigma_min(A + K - i alpha) >= C1 |alpha|
    at every sampled |alpha| >= r1.
    """
    a = np.asarray(a, dtype=float)
    k = np.asarray(k, dtype=float)
    dim = a.shape[0]
    alphas = (
        np.asarray(list(alpha_grid), dtype=float)
        if alpha_grid is not None
        else np.concatenate([g := np.geomspace(0.1, 100.0, 13), -g])
    )
    eye = np.eye(dim)

    for alpha in alphas[np.abs(alphas) >= r0]:
        smin = float(np.linalg.svd(a - 1j * alpha * eye, compute_uv=False)[-1])
        if smin < c0 * abs(alpha) * (1 - 1e-10):
            raise HypothesisFailed(
                f"base operator violates the resolvent bound at alpha={alpha}"
            )

    if isinstance(a_bound_samples, (int, np.integer)):
        rng = np.random.default_rng(seed)
        xs = rng.standard_normal((int(a_bound_samples), dim))
    else:
        xs = np.asarray(a_bound_samples, dtype=float)
    xs = xs / np.linalg.norm(xs, axis=1, keepdims=True)

    eps = min(0.5, c0 / 4.0)
    residuals = np.linalg.norm(xs @ k.T, axis=1) - eps * np.linalg.norm(xs @ a.T, axis=1)
    b_eps = float(max(0.0, np.max(residuals)))
    r1 = max(r0, 0.5 + 4.0 * b_eps / c0)
    c1 = c0 / 8.0

    check = np.abs(alphas[np.abs(alphas) >= r1])
    check = np.unique(np.concatenate([check, r1 * np.array([1.0, 2.0, 4.0, 8.0])]))
    ok = True
    for alpha in check:
        smin = float(np.linalg.svd(a + k - 1j * alpha * eye, compute_uv=False)[-1])
        if smin < c1 * alpha * (1 - 1e-10):
            ok = False
    return CompactPerturbationReport(
        eps=eps, r1=r1, c1=c1, b_of_eps=b_eps, verified_on_grid=ok, checked_alphas=check
    )


# ---------------------------------------------------------------------------
# compactness of the multiplication operator


@dataclass
class CompactnessReport:
    l2_norm_c: float
    singular_tail: np.ndarray
    mc_norm: float
    cutoffs: np.ndarray
    residual_norms: np.ndarray
    bounds: np.ndarray
    growth: np.ndarray
    per_s_norms: np.ndarray
    bound_satisfied: bool


class _SectionOperator:
    """Finite section of the multiplication operator, in H1-orthonormal
    coordinates per direction: X = W^{1,2}(H1) cap L^2(H2) -> Y = L^2(H1)."""

    def __init__(self, s_grid: np.ndarray, c_hat: np.ndarray, growth: np.ndarray):
        self.s_grid = np.asarray(s_grid, dtype=float)
        self.c_hat = c_hat  # (K, d, d) H1-coordinate blocks
        self.growth = growth
        k, d = c_hat.shape[0], c_hat.shape[1]
        self.k, self.d = k, d
        dq = np.diff(self.s_grid)
        q = np.zeros(k)
        q[:-1] += 0.5 * dq
        q[1:] += 0.5 * dq
        self.q = q  # trapezoid weights
        diffs = np.diff(np.eye(k), axis=0)  # (k-1, k) forward differences
        t_mat = diffs.T @ np.diag(1.0 / dq) @ diffs
        # X Gram per direction: (1 + h) diag(q) + derivative term
        self._gx_chol = []
        for h in growth:
            g = (1.0 + h) * np.diag(q) + t_mat
            self._gx_chol.append(np.linalg.cholesky(g))
        self._sqrt_q = np.sqrt(q)

    def _gx_inv_sqrt_apply(self, x: np.ndarray) -> np.ndarray:
        """Map X-orthonormal coordinates to coefficient arrays (K, d)."""
        out = np.empty_like(x)
        for j in range(self.d):
            out[:, j] = np.linalg.solve(self._gx_chol[j].T, x[:, j])
        return out

    def _gx_inv_sqrt_adjoint(self, x: np.ndarray) -> np.ndarray:
        out = np.empty_like(x)
        for j in range(self.d):
            out[:, j] = np.linalg.solve(self._gx_chol[j], x[:, j])
        return out

    def matvec(self, vec: np.ndarray, cutoff: int = 0) -> np.ndarray:
        x = self._gx_inv_sqrt_apply(vec.reshape(self.k, self.d))
        if cutoff:
            x = x.copy()
            x[:, :cutoff] = 0.0
        y = np.einsum("sij,sj->si", self.c_hat, x)
        return (self._sqrt_q[:, None] * y).reshape(-1)

    def rmatvec(self, vec: np.ndarray, cutoff: int = 0) -> np.ndarray:
        y = self._sqrt_q[:, None] * vec.reshape(self.k, self.d)
        x = np.einsum("sji,sj->si", self.c_hat, y)
        if cutoff:
            x[:, :cutoff] = 0.0
        return self._gx_inv_sqrt_adjoint(x).reshape(-1)

    @property
    def size(self) -> int:
        return self.k * self.d

    def top_singular_values(self, count: int, cutoff: int = 0, seed: int = 7) -> np.ndarray:
        n = self.size
        count = min(count, n - 1)
        if n <= 600:
            dense = np.column_stack(
                [self.matvec(col, cutoff) for col in np.eye(n)]
            )
            return svd_values(dense)[: count + 1]
        op = LinearOperator(
            (n, n),
            matvec=lambda v: self.matvec(np.asarray(v).ravel(), cutoff),
            rmatvec=lambda v: self.rmatvec(np.asarray(v).ravel(), cutoff),
        )
        v0 = np.random.default_rng(seed).standard_normal(n)
        vals = svds(op, k=count, v0=v0, return_singular_vectors=False)
        return np.sort(vals)[::-1]

    def operator_norm(self, cutoff: int = 0) -> float:
        return float(self.top_singular_values(1, cutoff)[0])


def multiplication_compactness_probe(
    path: ConnectingPath,
    c_blocks: Sequence[act.OperatorMatrix],
    cutoffs: Sequence[int] | None = None,
    tail_length: int = 32,
    fudge: float = 0.1,
) -> CompactnessReport:
    """Finite-section compactness data for the multiplication operator of C.

    Verifies, per mode cutoff n, the projection-norm chain
    ||M_C - M_C pi_n-section|| <= ||C||_{L^2} (3 / h_{n+1})^{1/4} (1 + fudge).
    """
    if len(c_blocks) != path.s_grid.size:
        raise InvalidInput("need one multiplication block per s sample")
    dim = path.dim
    m = path.num_samples
    order = ls.direction_order(dim, m)
    growth = ls.loop_growth_function(dim, m)
    w1_flat = act.flat_weights(dim, m, 1.0)

    c_hat = []
    for op in c_blocks:
        c_mode = act.to_mode_basis(op.mat, dim, m)[np.ix_(order, order)]
        w = w1_flat[order]
        c_hat.append(np.sqrt(w)[:, None] * c_mode / np.sqrt(w)[None, :])
    c_hat = np.stack(c_hat)

    per_s = np.array([float(np.linalg.norm(block, 2)) for block in c_hat])
    peak = float(np.max(per_s))
    if peak > 0 and (per_s[0] > 1e-8 * peak or per_s[-1] > 1e-8 * peak):
        raise NonDecayingC(
            "multiplication blocks do not vanish at the path ends; "
            "re-decompose with endpoint anchors first"
        )
    q = np.zeros(path.s_grid.size)
    dq = np.diff(path.s_grid)
    q[:-1] += 0.5 * dq
    q[1:] += 0.5 * dq
    l2_norm_c = float(np.sqrt(np.sum(q * per_s**2)))

    section = _SectionOperator(path.s_grid, c_hat, growth)
    mc_norm = section.operator_norm(0)
    tail = section.top_singular_values(min(tail_length, section.size - 1))

    if cutoffs is None:
        total = dim * m
        cutoffs = sorted({total // 16, total // 8, total // 4, total // 2})
    cutoffs = np.asarray(sorted(int(c) for c in cutoffs))
    if np.any(cutoffs < 1) or np.any(cutoffs >= dim * m):
        raise InvalidInput("cutoffs must lie strictly inside the direction range")

    residuals = np.array([section.operator_norm(int(n)) for n in cutoffs])
    bounds = np.array(
        [l2_norm_c * (3.0 / growth[int(n)]) ** 0.25 * (1.0 + fudge) for n in cutoffs]
    )
    return CompactnessReport(
        l2_norm_c=l2_norm_c,
        singular_tail=tail,
        mc_norm=mc_norm,
        cutoffs=cutoffs,
        residual_norms=residuals,
        bounds=bounds,
        growth=growth,
        per_s_norms=per_s,
        bound_satisfied=bool(np.all(residuals <= bounds)),
    )


# ---------------------------------------------------------------------------
# semi-Fredholm estimate and the index-zero witness


def semi_fredholm_delta(c_loop: np.ndarray) -> float:
    """delta = min over t-samples of the smallest singular value of C(t)."""
    blocks = np.asarray(c_loop, dtype=float)
    if blocks.ndim != 3 or blocks.shape[1] != blocks.shape[2]:
        raise InvalidInput("expected a (M, k, k) stack of matrices")
    delta = np.inf
    for block in blocks:
        svals = np.linalg.svd(block, compute_uv=False)
        if svals[-1] <= 1e-14 * max(1.0, svals[0]):
            raise SingularSample("a sample of the matrix loop is numerically singular")
        delta = min(delta, float(svals[-1]))
    return delta


def semi_fredholm_estimate(c_loop: np.ndarray, xi: Loop) -> tuple[float, float]:
    """(|F_C xi|_0^2, delta^2 (|xi|_1^2 - |xi|_0^2)) for band-limited xi."""
    delta = semi_fredholm_delta(c_loop)
    xidot = ls.spectral_derivative(xi)
    fc = np.einsum("mij,mj->mi", np.asarray(c_loop, dtype=float), xidot.samples)
    lhs = float(np.mean(np.sum(fc * fc, axis=1)))
    rhs = delta**2 * (ls.sobolev_norm(xi, 1) ** 2 - ls.sobolev_norm(xi, 0) ** 2)
    return lhs, rhs


def kernel_cokernel_dims(mat: np.ndarray, tol: float = 1e-8) -> tuple[int, int]:
    """Counts of singular values <= tol * sigma_max for the matrix and its adjoint."""
    svals = np.linalg.svd(mat, compute_uv=False)
    svals_t = np.linalg.svd(mat.T, compute_uv=False)
    top = max(float(svals[0]), 1e-300)
    return int(np.sum(svals <= tol * top)), int(np.sum(svals_t <= tol * top))


def index_zero_of_b_dt(chart: ChartSpec, u: Loop, tol_ker: float = 1e-8) -> tuple[int, int]:
    """Kernel and adjoint-kernel dimensions of B^{-1} d/dt on the resolved modes.

    Equal dimensions witness index zero at truncation; inequality means the
    assembly is inconsistent and raises.
    """
    op = act.decompose(chart, None, u).f_part
    dim = u.dim
    res = ls.resolved_flat_indices(dim, u.num_samples)
    f_res = act.to_mode_basis(op.mat, dim, u.num_samples)[np.ix_(res, res)]
    ker, coker = kernel_cokernel_dims(f_res, tol_ker)
    if ker != coker:
        raise FloerlabError(
            f"index-zero witness failed: kernel {ker} vs adjoint kernel {coker}"
        )
    return ker, coker
