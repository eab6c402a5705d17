"""Dense real/complex linear-algebra kernels.

Everything downstream (pointwise symplectic algebra, Hessian spectra,
resolvent probes) funnels through the handful of routines in this module:
a certified Heron square-root iteration, symmetric eigensolves, singular
values, and shifted complex resolvent norms.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import (
    InvalidInput,
    NoConvergence,
    NotSpd,
    NotSymmetric,
    SingularIterate,
    SingularShift,
)

TOL_SYM = 1e-10  # relative symmetry-defect tolerance for certificates


@dataclass(frozen=True)
class SpdCertificate:
    """Symmetry defect and smallest eigenvalue of a candidate SPD matrix."""

    matrix: np.ndarray
    min_eigenvalue: float
    symmetry_defect: float  # max |M - M^T| entry

    @property
    def valid(self) -> bool:
        scale = max(float(np.max(np.abs(self.matrix))), 1e-300)
        return self.symmetry_defect <= TOL_SYM * scale and self.min_eigenvalue > 0.0


def spd_certificate(matrix: np.ndarray) -> SpdCertificate:
    m = np.asarray(matrix, dtype=float)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise InvalidInput(f"expected a square matrix, got shape {m.shape}")
    defect = float(np.max(np.abs(m - m.T))) if m.size else 0.0
    sym = 0.5 * (m + m.T)
    min_eig = float(np.linalg.eigvalsh(sym)[0])
    return SpdCertificate(matrix=m, min_eigenvalue=min_eig, symmetry_defect=defect)


def _symmetry_defect(m: np.ndarray) -> float:
    return float(np.max(np.abs(m - m.T)))


def heron_sqrt_scalar(q: float, r1: float, tol: float = 1e-13) -> float:
    """Square root of a positive real by the averaging recursion from r1."""
    if q <= 0 or r1 <= 0:
        raise InvalidInput("q and r1 must be positive")
    r = float(r1)
    for _ in range(200):
        if abs(r * r - q) <= tol:
            return r
        r = 0.5 * (r + q / r)
    if abs(r * r - q) <= tol:
        return r
    raise NoConvergence(f"scalar iteration stalled at residual {abs(r * r - q):.3e}")


def heron_scalar_iterates(q: float, r1: float, count: int) -> list[float]:
    """First `count` iterates r_1, ..., r_count of the scalar recursion."""
    if q <= 0 or r1 <= 0:
        raise InvalidInput("q and r1 must be positive")
    out = [float(r1)]
    for _ in range(count - 1):
        out.append(0.5 * (out[-1] + q / out[-1]))
    return out


def newton_picard_iterates(q: float, r1: float, count: int) -> list[float]:
    """Tangent-line iteration for r^2 - q; algebraically identical to the
    averaging recursion and used as its cross-check."""
    if q <= 0 or r1 <= 0:
        raise InvalidInput("q and r1 must be positive")
    out = [float(r1)]
    for _ in range(count - 1):
        r = out[-1]
        out.append(r - (r * r - q) / (2.0 * r))
    return out


def heron_sqrt(q: np.ndarray, tol: float = 1e-13, max_iter: int = 100) -> np.ndarray:
    """Positive square root of an SPD matrix by the averaging recursion
    R_{n+1} = (R_n + R_n^{-1} Q)/2 started at the identity.

    Runs the recursion in the coupled form that carries the inverse iterate
    along (Y_k, Z_k) with Y_k = R_{k+1}, Z_k = Q^{-1} R_{k+1}: the same
    sequence in exact arithmetic, but the averaging map's amplification of
    non-commuting rounding noise (factor ~ sqrt(cond) near the fixed point)
    never sees an explicit solve against a converged iterate.  Once progress
    stalls, tangent-line (Newton-Picard) corrections with a Sylvester solve
    finish to ||R R - Q||_F <= tol ||Q||_F; in the commuting algebra these
    corrections are again exactly the averaging step.
    """
    from scipy.linalg import solve_sylvester

    cert = spd_certificate(q)
    if not cert.valid:
        raise NotSpd(
            f"SPD certificate failed: symmetry defect {cert.symmetry_defect:.3e}, "
            f"min eigenvalue {cert.min_eigenvalue:.3e}"
        )
    if tol <= 0:
        raise InvalidInput("tol must be positive")
    qm = cert.matrix
    k = qm.shape[0]
    q_norm = float(np.linalg.norm(qm))

    y, z = qm.copy(), np.eye(k)
    best, best_res = y, float(np.linalg.norm(y @ y - qm))
    prev_res = np.inf
    steps = 0
    while steps < max_iter:
        if best_res <= tol * q_norm:
            return best
        res = float(np.linalg.norm(y @ y - qm))
        if res > 0.5 * prev_res and res < 1e-4 * q_norm:
            break  # rounding regime: switch to tangent corrections
        prev_res = res
        try:
            y_next = 0.5 * (y + np.linalg.inv(z))
            z_next = 0.5 * (z + np.linalg.inv(y))
        except np.linalg.LinAlgError as exc:
            raise SingularIterate("iterate is numerically singular") from exc
        if not (np.all(np.isfinite(y_next)) and np.all(np.isfinite(z_next))):
            raise SingularIterate("iterate produced non-finite entries")
        y, z = 0.5 * (y_next + y_next.T), 0.5 * (z_next + z_next.T)
        steps += 1
        res = float(np.linalg.norm(y @ y - qm))
        if res < best_res:
            best, best_res = y, res

    r = best
    while steps < max_iter and best_res > tol * q_norm:
        correction = solve_sylvester(r, r, qm - r @ r)
        r = r + correction
        r = 0.5 * (r + r.T)
        steps += 1
        res = float(np.linalg.norm(r @ r - qm))
        if res < best_res:
            best, best_res = r, res
        else:
            break
    if best_res <= tol * q_norm:
        return best
    raise NoConvergence(
        f"residual {best_res:.3e} above {tol * q_norm:.3e} after {steps} iterations"
    )


def sym_eigen(m: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Eigenvalues (ascending) and orthonormal eigenvectors of a symmetric matrix."""
    a = np.asarray(m, dtype=float)
    scale = max(float(np.max(np.abs(a))), 1e-300)
    if _symmetry_defect(a) > TOL_SYM * scale:
        raise NotSymmetric(f"symmetry defect {_symmetry_defect(a):.3e} exceeds tolerance")
    w, v = np.linalg.eigh(0.5 * (a + a.T))
    return w, v


def svd_values(m: np.ndarray) -> np.ndarray:
    """Singular values of a (possibly rectangular) matrix, descending."""
    a = np.asarray(m)
    if not np.all(np.isfinite(a)):
        raise InvalidInput("matrix has non-finite entries")
    return np.linalg.svd(a, compute_uv=False)


def shifted_resolvent_norm(a: np.ndarray, alpha: float) -> float:
    """Operator 2-norm of alpha (A - i alpha)^{-1}."""
    if alpha == 0:
        raise InvalidInput("alpha must be nonzero")
    m = np.asarray(a, dtype=complex)
    shifted = m - 1j * alpha * np.eye(m.shape[0])
    smin = float(np.linalg.svd(shifted, compute_uv=False)[-1])
    scale = max(float(np.max(np.abs(shifted))), abs(alpha))
    if smin <= 1e-14 * scale:
        raise SingularShift(f"i*alpha with alpha={alpha} lies in the truncated spectrum")
    return abs(alpha) / smin


def sum_quadrature_inequality(values: np.ndarray) -> tuple[float, float]:
    """(sum a_j)^2 and k * sum a_j^2 for positive a_j; left never exceeds right."""
    a = np.asarray(values, dtype=float)
    if a.ndim != 1 or a.size == 0 or np.any(a <= 0):
        raise InvalidInput("expected a nonempty 1-d array of positive reals")
    lhs = float(np.sum(a) ** 2)
    rhs = float(a.size * np.sum(a * a))
    return lhs, rhs
