"""Exact symplectic charts and time-periodic Hamiltonian perturbations.

A chart stores the coefficient functions lambda_i of the primitive 1-form
together with exact derivatives up to third order; polynomials give these for
free, and the built-in analytic chart supplies them in closed form.  Finite
differences never feed the tensors -- they only validate them in the test
suites.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from .errors import Degenerate, OddDimension, OutOfDomain, SchemaError, NondegeneracyProbeFailed
from .symplectic import b_from_omega, det_threshold


# ---------------------------------------------------------------------------
# multivariate polynomials as monomial lists


@dataclass(frozen=True)
class Polynomial:
    """Sum of coeff * prod_j x_j^e_j terms over a fixed number of variables."""

    nvars: int
    coeffs: tuple[float, ...]
    exponents: tuple[tuple[int, ...], ...]

    @staticmethod
    def from_terms(nvars: int, terms: Sequence[tuple[float, Sequence[int]]]) -> "Polynomial":
        coeffs = []
        exps = []
        for c, e in terms:
            if len(e) != nvars:
                raise SchemaError(f"exponent list {e} does not match {nvars} variables")
            if any((not isinstance(k, (int, np.integer))) or k < 0 for k in e):
                raise SchemaError(f"exponents must be nonnegative integers, got {e}")
            coeffs.append(float(c))
            exps.append(tuple(int(k) for k in e))
        return Polynomial(nvars=nvars, coeffs=tuple(coeffs), exponents=tuple(exps))

    @staticmethod
    def zero(nvars: int) -> "Polynomial":
        return Polynomial(nvars=nvars, coeffs=(), exponents=())

    def __call__(self, x: np.ndarray) -> float:
        x = np.asarray(x, dtype=float)
        total = 0.0
        for c, e in zip(self.coeffs, self.exponents):
            term = c
            for xj, ej in zip(x, e):
                if ej:
                    term *= xj**ej
            total += term
        return total

    def diff(self, j: int) -> "Polynomial":
        coeffs = []
        exps = []
        for c, e in zip(self.coeffs, self.exponents):
            if e[j] == 0:
                continue
            coeffs.append(c * e[j])
            new = list(e)
            new[j] -= 1
            exps.append(tuple(new))
        return Polynomial(nvars=self.nvars, coeffs=tuple(coeffs), exponents=tuple(exps))


def _poly_from_json(nvars: int, monomials) -> Polynomial:
    if not isinstance(monomials, list):
        raise SchemaError("monomial list must be a JSON array")
    terms = []
    for mono in monomials:
        if not isinstance(mono, dict) or "exponents" not in mono or "coeff" not in mono:
            raise SchemaError(f"malformed monomial {mono!r}")
        exps = mono["exponents"]
        if not isinstance(exps, list):
            raise SchemaError(f"malformed exponent list {exps!r}")
        coeff = mono["coeff"]
        if not isinstance(coeff, (int, float)):
            raise SchemaError(f"coefficient {coeff!r} is not a number")
        terms.append((float(coeff), exps))
    return Polynomial.from_terms(nvars, terms)


# ---------------------------------------------------------------------------
# coefficient functions with exact derivatives


class CoefficientFunction:
    """One coefficient lambda_i with exact derivatives up to third order."""

    def value(self, x: np.ndarray) -> float:
        raise NotImplementedError

    def grad(self, x: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def hess(self, x: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def third(self, x: np.ndarray) -> np.ndarray:
        raise NotImplementedError


class PolyCoefficient(CoefficientFunction):
    def __init__(self, poly: Polynomial):
        self.poly = poly
        n = poly.nvars
        self._grad = [poly.diff(j) for j in range(n)]
        self._hess = [[g.diff(k) for k in range(n)] for g in self._grad]
        self._third = [[[h.diff(l) for l in range(n)] for h in row] for row in self._hess]

    def value(self, x):
        return self.poly(x)

    def grad(self, x):
        return np.array([g(x) for g in self._grad])

    def hess(self, x):
        n = self.poly.nvars
        return np.array([[self._hess[j][k](x) for k in range(n)] for j in range(n)])

    def third(self, x):
        n = self.poly.nvars
        return np.array(
            [[[self._third[j][k][l](x) for l in range(n)] for k in range(n)] for j in range(n)]
        )


class CallableCoefficient(CoefficientFunction):
    """Closed-form coefficient; used by the analytic built-in chart."""

    def __init__(self, value, grad, hess, third):
        self._value, self._g, self._h, self._t = value, grad, hess, third

    def value(self, x):
        return self._value(x)

    def grad(self, x):
        return np.asarray(self._g(x), dtype=float)

    def hess(self, x):
        return np.asarray(self._h(x), dtype=float)

    def third(self, x):
        return np.asarray(self._t(x), dtype=float)


# ---------------------------------------------------------------------------
# the chart itself


@dataclass
class ChartSpec:
    """Exact symplectic chart: primitive coefficients plus a domain predicate."""

    dim: int
    coefficients: list[CoefficientFunction]
    domain: Callable[[np.ndarray], bool] = field(default=lambda x: True)
    probes: list[np.ndarray] = field(default_factory=list)
    name: str = "custom"

    def __post_init__(self):
        if self.dim % 2 != 0 or self.dim < 2:
            raise OddDimension(f"chart dimension must be even and >= 2, got {self.dim}")
        if len(self.coefficients) != self.dim:
            raise SchemaError(
                f"need {self.dim} coefficient functions, got {len(self.coefficients)}"
            )

    @property
    def half_dim(self) -> int:
        return self.dim // 2

    def contains(self, x: np.ndarray) -> bool:
        return bool(self.domain(np.asarray(x, dtype=float)))

    def require_inside(self, x: np.ndarray) -> None:
        if not self.contains(x):
            raise OutOfDomain(f"point {np.asarray(x)} is outside the chart domain")

    def lambda_value(self, x: np.ndarray) -> np.ndarray:
        return np.array([c.value(x) for c in self.coefficients])

    def lambda_jacobian(self, x: np.ndarray) -> np.ndarray:
        """J[j, i] = d_j lambda_i."""
        return np.column_stack([c.grad(x) for c in self.coefficients])

    def omega(self, x: np.ndarray) -> np.ndarray:
        """Omega[j, i] = d_j lambda_i - d_i lambda_j."""
        jac = self.lambda_jacobian(x)
        return jac - jac.T

    def d_omega(self, x: np.ndarray) -> np.ndarray:
        """dOmega[l, j, i] = d_l Omega_{ji}."""
        lam = self.second_derivatives(x)
        return lam - np.transpose(lam, (0, 2, 1))

    def b_matrix(self, x: np.ndarray) -> np.ndarray:
        self.require_inside(x)
        return b_from_omega(self.omega(x))

    def second_derivatives(self, x: np.ndarray) -> np.ndarray:
        """Lambda[k, j, i] = d_k d_j lambda_i."""
        return np.stack([c.hess(x) for c in self.coefficients], axis=-1)

    def third_derivatives(self, x: np.ndarray) -> np.ndarray:
        """T[l, k, j, i] = d_l d_k d_j lambda_i."""
        return np.stack([c.third(x) for c in self.coefficients], axis=-1)


@dataclass(frozen=True)
class LTensor:
    """All (2n)^3 components L[k, j, i] at one point."""

    x: np.ndarray
    values: np.ndarray

    def contract(self, eta: np.ndarray, xi: np.ndarray, zeta: np.ndarray) -> float:
        return float(np.einsum("kji,k,j,i->", self.values, eta, xi, zeta))


def l_tensor_at(chart: ChartSpec, x: np.ndarray) -> LTensor:
    """L[k, j, i] = Lambda[k, j, i] - Lambda[i, k, j] at x."""
    x = np.asarray(x, dtype=float)
    chart.require_inside(x)
    lam = chart.second_derivatives(x)
    values = lam - np.transpose(lam, (1, 2, 0))  # [k,j,i] -> Lambda[i,k,j]
    return LTensor(x=x, values=values)


def l_tensor_gradient(chart: ChartSpec, x: np.ndarray) -> np.ndarray:
    """dL[l, k, j, i] = d_l L[k, j, i]; needs third derivatives of lambda."""
    x = np.asarray(x, dtype=float)
    chart.require_inside(x)
    t = chart.third_derivatives(x)
    return t - np.transpose(t, (0, 2, 3, 1))  # [l,k,j,i] -> Lambda3[l,i,k,j]


def lbar_apply(chart: ChartSpec, x: np.ndarray, eta: np.ndarray, zeta: np.ndarray) -> np.ndarray:
    """Vector with <Lbar(eta, zeta), xi> = L(eta, xi, zeta) for all xi."""
    tensor = l_tensor_at(chart, x)
    return np.einsum("kji,k,i->j", tensor.values, np.asarray(eta, float), np.asarray(zeta, float))


def lbar_matrix(chart: ChartSpec, x: np.ndarray, zeta: np.ndarray) -> np.ndarray:
    """Matrix of eta -> Lbar(eta, zeta): entry [j, k] = sum_i L[k, j, i] zeta_i."""
    tensor = l_tensor_at(chart, x)
    return np.einsum("kji,i->jk", tensor.values, np.asarray(zeta, dtype=float))


# ---------------------------------------------------------------------------
# Hamiltonians: finite Fourier sums in t with exact x-derivatives


@dataclass
class Hamiltonian:
    """h(t, x) = sum_k cos(2 pi k t) P_k(x) + sin(2 pi k t) Q_k(x)."""

    dim: int
    modes: list[tuple[int, CoefficientFunction, CoefficientFunction | None]]

    def _weights(self, t: float) -> list[tuple[float, CoefficientFunction]]:
        out = []
        for k, cpart, spart in self.modes:
            out.append((np.cos(2 * np.pi * k * t), cpart))
            if spart is not None:
                out.append((np.sin(2 * np.pi * k * t), spart))
        return out

    def value(self, t: float, x: np.ndarray) -> float:
        return sum(w * f.value(x) for w, f in self._weights(t))

    def grad(self, t: float, x: np.ndarray) -> np.ndarray:
        g = np.zeros(self.dim)
        for w, f in self._weights(t):
            if w != 0.0:
                g += w * f.grad(x)
        return g

    def hess(self, t: float, x: np.ndarray) -> np.ndarray:
        a = np.zeros((self.dim, self.dim))
        for w, f in self._weights(t):
            if w != 0.0:
                a += w * f.hess(x)
        return a


def hessian_of_h(h: Hamiltonian, t: float, x: np.ndarray) -> np.ndarray:
    """Symmetric matrix of second x-derivatives of h_t at x."""
    a = h.hess(t, np.asarray(x, dtype=float))
    return 0.5 * (a + a.T)  # exact symmetry up to rounding; Schwarz holds analytically


def hamiltonian_vector_field(chart: ChartSpec, h: Hamiltonian, t: float, x: np.ndarray) -> np.ndarray:
    """X with dh_t(.) = omega(., X), i.e. the solve Omega X = grad h_t."""
    x = np.asarray(x, dtype=float)
    chart.require_inside(x)
    omega = chart.omega(x)
    if abs(np.linalg.det(omega)) <= det_threshold(omega):
        raise Degenerate("form degenerate: Hamiltonian vector field undefined")
    return np.linalg.solve(omega, h.grad(t, x))


def quadratic_hamiltonian(dim: int, coefficient: float) -> Hamiltonian:
    """Time-independent h(x) = coefficient * |x|^2."""
    terms = []
    for j in range(dim):
        e = [0] * dim
        e[j] = 2
        terms.append((coefficient, e))
    poly = Polynomial.from_terms(dim, terms)
    return Hamiltonian(dim=dim, modes=[(0, PolyCoefficient(poly), None)])


# ---------------------------------------------------------------------------
# built-in charts


def _box_predicate(lo: np.ndarray, hi: np.ndarray) -> Callable[[np.ndarray], bool]:
    def inside(x: np.ndarray) -> bool:
        return bool(np.all(x >= lo) and np.all(x <= hi))

    return inside


def darboux_chart(half_dim: int = 1) -> ChartSpec:
    """lambda = (1/2) sum_j (x_{2j-1} dx_{2j} - x_{2j} dx_{2j-1}), interleaved pairs."""
    dim = 2 * half_dim
    coeffs = []
    for i in range(dim):
        pair = i // 2
        e = [0] * dim
        if i % 2 == 0:  # lambda_{2j-1} = -x_{2j}/2
            e[2 * pair + 1] = 1
            poly = Polynomial.from_terms(dim, [(-0.5, e)])
        else:  # lambda_{2j} = +x_{2j-1}/2
            e[2 * pair] = 1
            poly = Polynomial.from_terms(dim, [(0.5, e)])
        coeffs.append(PolyCoefficient(poly))
    return ChartSpec(dim=dim, coefficients=coeffs, probes=[np.zeros(dim)], name="darboux")


def cubic_chart() -> ChartSpec:
    """n = 1 chart with lambda = (x1 + x1^3/3) dx2, so Omega = (1 + x1^2) Omega0."""
    poly2 = Polynomial.from_terms(2, [(1.0, [1, 0]), (1.0 / 3.0, [3, 0])])
    coeffs = [PolyCoefficient(Polynomial.zero(2)), PolyCoefficient(poly2)]
    return ChartSpec(dim=2, coefficients=coeffs, probes=[np.zeros(2), np.array([1.0, 0.0])], name="cubic")


def exp_chart() -> ChartSpec:
    """n = 1 chart with lambda = e^{x1} dx2; genuinely non-polynomial."""

    def grad(x):
        g = np.zeros(2)
        g[0] = np.exp(x[0])
        return g

    def hess(x):
        h = np.zeros((2, 2))
        h[0, 0] = np.exp(x[0])
        return h

    def third(x):
        t = np.zeros((2, 2, 2))
        t[0, 0, 0] = np.exp(x[0])
        return t

    coeffs = [
        PolyCoefficient(Polynomial.zero(2)),
        CallableCoefficient(lambda x: float(np.exp(x[0])), grad, hess, third),
    ]
    return ChartSpec(dim=2, coefficients=coeffs, probes=[np.zeros(2), np.array([1.0, 0.0])], name="exp")


BUILTIN_CHARTS = {"darboux": darboux_chart, "cubic": cubic_chart, "exp": exp_chart}


def load_chart(source: str) -> ChartSpec:
    """Resolve a built-in chart name or parse a polynomial-chart JSON file."""
    if source in BUILTIN_CHARTS:
        return BUILTIN_CHARTS[source]()
    with open(source, "rb") as fh:
        return parse_chart(fh.read())


# ---------------------------------------------------------------------------
# JSON parsing


def parse_chart(document: bytes | str) -> ChartSpec:
    """Polynomial chart from its JSON description.

    Schema: {"dim": 2n, "lambda": [[{"exponents": [...], "coeff": r}, ...] x 2n],
             "probes": [points], "domain": {"type": "box", "min": [...], "max": [...]}}
    """
    try:
        doc = json.loads(document)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"invalid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise SchemaError("chart document must be a JSON object")
    if "dim" not in doc or "lambda" not in doc:
        raise SchemaError("chart document needs 'dim' and 'lambda'")
    dim = doc["dim"]
    if not isinstance(dim, int) or dim <= 0:
        raise SchemaError(f"'dim' must be a positive integer, got {dim!r}")
    if dim % 2 != 0:
        raise OddDimension(f"chart dimension must be even, got {dim}")
    lam = doc["lambda"]
    if not isinstance(lam, list) or len(lam) != dim:
        raise SchemaError(f"'lambda' must list {dim} coefficient polynomials")
    coeffs = [PolyCoefficient(_poly_from_json(dim, entry)) for entry in lam]

    domain = lambda x: True  # noqa: E731
    if "domain" in doc:
        dom = doc["domain"]
        if not isinstance(dom, dict) or dom.get("type") != "box":
            raise SchemaError("only box domains are supported")
        lo = np.asarray(dom.get("min"), dtype=float)
        hi = np.asarray(dom.get("max"), dtype=float)
        if lo.shape != (dim,) or hi.shape != (dim,):
            raise SchemaError("domain box bounds must have length dim")
        domain = _box_predicate(lo, hi)

    probes = [np.zeros(dim)]
    if "probes" in doc:
        raw = doc["probes"]
        if not isinstance(raw, list):
            raise SchemaError("'probes' must be a list of points")
        probes = [np.asarray(p, dtype=float) for p in raw]
        for p in probes:
            if p.shape != (dim,):
                raise SchemaError(f"probe {p} does not have dimension {dim}")

    spec = ChartSpec(dim=dim, coefficients=coeffs, domain=domain, probes=probes, name="json")
    for p in probes:
        omega = spec.omega(p)
        if abs(np.linalg.det(omega)) <= det_threshold(omega):
            raise NondegeneracyProbeFailed(f"Omega singular at declared probe {p}")
    return spec


def parse_hamiltonian(document: bytes | str, dim: int) -> Hamiltonian:
    """Hamiltonian from JSON: {"modes": [{"k": int, "cos_poly": [...], "sin_poly": [...]}]}."""
    try:
        doc = json.loads(document)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"invalid JSON: {exc}") from exc
    if not isinstance(doc, dict) or "modes" not in doc or not isinstance(doc["modes"], list):
        raise SchemaError("hamiltonian document needs a 'modes' array")
    modes = []
    for entry in doc["modes"]:
        if not isinstance(entry, dict) or "k" not in entry:
            raise SchemaError(f"malformed mode {entry!r}")
        k = entry["k"]
        if not isinstance(k, int) or k < 0:
            raise SchemaError(f"mode index must be a nonnegative integer, got {k!r}")
        cos_poly = _poly_from_json(dim, entry.get("cos_poly", []))
        spart = None
        if "sin_poly" in entry:
            spart = PolyCoefficient(_poly_from_json(dim, entry["sin_poly"]))
        modes.append((k, PolyCoefficient(cos_poly), spart))
    return Hamiltonian(dim=dim, modes=modes)
