"""Pointwise symplectic linear algebra.

Fixes the convention omega(xi, eta) = xi^T Omega eta with Omega antisymmetric.
The inner product <.,.> = omega(., B .) then forces B = Omega^{-1}, and the
compatible almost complex structure is J = sqrt(-B^2)^{-1} B with metric
G = Omega J.  The square root is always taken by the averaging iteration from
`densela`, so every chart evaluation exercises that code path.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import densela
from .errors import Degenerate, HeronFailure, NotAntisymmetric, NotSpd

_ANTISYM_TOL = 1e-12


def _check_antisymmetric(m: np.ndarray, what: str) -> None:
    scale = max(float(np.max(np.abs(m))), 1e-300)
    defect = float(np.max(np.abs(m + m.T)))
    if defect > _ANTISYM_TOL * scale:
        raise NotAntisymmetric(f"{what} has antisymmetry defect {defect:.3e}")


def det_threshold(omega: np.ndarray) -> float:
    """Degeneracy threshold 1e-12 * scale^(2n) for |det Omega|."""
    scale = max(float(np.max(np.abs(omega))), 1e-300)
    return 1e-12 * scale ** omega.shape[0]


def b_from_omega(omega: np.ndarray) -> np.ndarray:
    """B = Omega^{-1}, the unique matrix with <xi, eta> = omega(xi, B eta)."""
    w = np.asarray(omega, dtype=float)
    _check_antisymmetric(w, "Omega")
    if abs(np.linalg.det(w)) <= det_threshold(w):
        raise Degenerate("form is numerically degenerate at this point")
    return np.linalg.inv(w)


def jb_from_b(b: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Compatible almost complex structure J = sqrt(-B^2)^{-1} B.

    Returns (J, sqrt(-B^2)).  The root is computed by the averaging iteration;
    since B commutes with -B^2 it also commutes with the root, which is what
    makes J an honest complex structure.
    """
    bm = np.asarray(b, dtype=float)
    _check_antisymmetric(bm, "B")
    neg_b2 = -bm @ bm
    try:
        root = densela.heron_sqrt(neg_b2)
    except (NotSpd, densela.NoConvergence, densela.SingularIterate) as exc:
        raise HeronFailure(f"square root of -B^2 failed: {exc}") from exc
    jb = np.linalg.solve(root, bm)
    return jb, root


@dataclass
class SymplecticPointData:
    """All pointwise data attached to a chart point: Omega, B, J, metric."""

    x: np.ndarray
    omega: np.ndarray
    b: np.ndarray
    jb: np.ndarray
    gb: np.ndarray
    sqrt_neg_b2: np.ndarray = field(default=None, repr=False)  # type: ignore[assignment]


def symplectic_point(omega: np.ndarray, x: np.ndarray | None = None) -> SymplecticPointData:
    """Assemble the full point data from the matrix of the form."""
    w = np.asarray(omega, dtype=float)
    b = b_from_omega(w)
    jb, root = jb_from_b(b)
    gb = w @ jb
    if x is None:
        x = np.zeros(w.shape[0])
    return SymplecticPointData(x=np.asarray(x, dtype=float), omega=w, b=b, jb=jb, gb=gb, sqrt_neg_b2=root)


def certify_point(data: SymplecticPointData, tol: float = 1e-10) -> dict:
    """Residual report for every pointwise invariant; passes iff all <= tol.

    Positivity constraints (min eigenvalue, determinants) enter as hinge
    residuals that are zero exactly when the constraint holds.
    """
    w, b, jb, gb = data.omega, data.b, data.jb, data.gb
    dim = w.shape[0]
    eye = np.eye(dim)
    scale_w = max(float(np.max(np.abs(w))), 1e-300)
    scale_b = max(float(np.max(np.abs(b))), 1e-300)

    neg_b2 = -b @ b
    neg_b2_sym = 0.5 * (neg_b2 + neg_b2.T)
    gb_sym = 0.5 * (gb + gb.T)

    residuals = {
        "omega_antisymmetry": float(np.max(np.abs(w + w.T))) / scale_w,
        "omega_b_identity": float(np.max(np.abs(w @ b - eye))),
        "b_antisymmetry": float(np.max(np.abs(b + b.T))) / scale_b,
        "neg_b2_symmetry": float(np.max(np.abs(neg_b2 - neg_b2.T))) / max(scale_b**2, 1e-300),
        "neg_b2_positive": max(0.0, -float(np.linalg.eigvalsh(neg_b2_sym)[0])),
        "jb_square": float(np.max(np.abs(jb @ jb + eye))),
        "gb_symmetry": float(np.max(np.abs(gb - gb.T))),
        "gb_positive": max(0.0, -float(np.linalg.eigvalsh(gb_sym)[0])),
        "det_b_positive": max(0.0, -float(np.linalg.det(b))),
        "det_jb_is_one": abs(float(np.linalg.det(jb)) - 1.0),
    }
    passed = all(r <= tol for r in residuals.values())
    return {"residuals": residuals, "tol": tol, "passed": passed}
