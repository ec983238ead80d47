"""Exchange matrices, mutations, shear/lambda flip dynamics and quantum (di)logarithms.

The exact layer (seeds, mutation, the exchange matrix of a tessellation) is
integer arithmetic; the coordinate flips and the special functions are double
precision with per-test tolerances.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np
from scipy.integrate import quad

from .errors import (
    DomainViolationError,
    EdgeNotInteriorError,
    EdgeNotPresentError,
    NonConvergentError,
)
from .kernel import ccw
from .ptolemy import MarkedTessellation, Edge, format_edge, _sorted_vertices, _vkey


@dataclass(frozen=True)
class Seed:
    """An indexed edge set with a skew-symmetric integer exchange matrix."""

    edges: tuple[str, ...]
    eps: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        n = len(self.edges)
        if len(self.eps) != n or any(len(row) != n for row in self.eps):
            raise ValueError("exchange matrix shape does not match the edge list")
        for i in range(n):
            for j in range(n):
                if self.eps[i][j] != -self.eps[j][i]:
                    raise ValueError("exchange matrix must be skew-symmetric")

    def index(self, e: str) -> int:
        try:
            return self.edges.index(e)
        except ValueError:
            raise EdgeNotPresentError(f"edge {e} not in seed") from None

    def matrix(self) -> np.ndarray:
        return np.array(self.eps, dtype=int)


def seed_to_json(seed: Seed) -> str:
    return json.dumps({"edges": list(seed.edges), "eps": [list(row) for row in seed.eps]})


def seed_from_json(text: str) -> Seed:
    data = json.loads(text)
    return Seed(tuple(data["edges"]), tuple(tuple(row) for row in data["eps"]))


def epsilon_of(t: MarkedTessellation, restriction: list[Edge] | None = None) -> Seed:
    """The exchange matrix of a tessellation on the given support edges.

    For distinct edges e, f of one support triangle (they share one vertex),
    rotating e onto f about that vertex sweeping through the triangle clockwise
    contributes +1, counterclockwise -1; contributions add over triangles.
    """
    support_edges = t.support_edges()
    if restriction is None:
        edges = sorted(support_edges, key=lambda e: tuple(_vkey(v) for v in _sorted_vertices(e)))
    else:
        edges = list(restriction)
        for e in edges:
            if e not in support_edges:
                raise EdgeNotInteriorError(f"{format_edge(e)} is not a support edge")
    ids = [format_edge(e) for e in edges]
    index = {e: i for i, e in enumerate(edges)}
    n = len(edges)
    eps = [[0] * n for _ in range(n)]
    for tri in t.triangles:
        x, y, z = tuple(tri)
        if not ccw(x, y, z):
            y, z = z, y
        # (x, y, z) is now counterclockwise; consecutive edges about the common
        # vertex sweep the triangle clockwise, contributing +1
        cycle = (frozenset((x, y)), frozenset((y, z)), frozenset((z, x)))
        for k in range(3):
            e, f = cycle[k], cycle[(k + 1) % 3]
            if e in index and f in index:
                eps[index[e]][index[f]] += 1
                eps[index[f]][index[e]] -= 1
    return Seed(tuple(ids), tuple(tuple(row) for row in eps))


def mutate(seed: Seed, e: str) -> Seed:
    """Matrix mutation in the direction e; involutive."""
    k = seed.index(e)
    old = seed.eps
    n = len(old)
    new = [[0] * n for _ in range(n)]
    for s in range(n):
        for t in range(n):
            if s == k or t == k:
                new[s][t] = -old[s][t]
            elif old[s][k] * old[k][t] > 0:
                new[s][t] = old[s][t] + abs(old[s][k]) * old[k][t]
            else:
                new[s][t] = old[s][t]
    return Seed(seed.edges, tuple(tuple(row) for row in new))


def _vector(seed: Seed, point: dict[str, float]) -> np.ndarray:
    return np.array([point[e] for e in seed.edges], dtype=float)


def _point(seed: Seed, vec: np.ndarray) -> dict[str, float]:
    return {e: float(v) for e, v in zip(seed.edges, vec)}


def shear_flip(seed: Seed, point: dict[str, float], e: str) -> tuple[Seed, dict[str, float]]:
    """Shearing-coordinate change under the flip at e.

    The flipped coordinate negates; every neighbor s picks up
    -eps[s,e] * log(1 + exp(-sgn(eps[s,e]) * x_e)).
    """
    k = seed.index(e)
    eps = seed.matrix()
    x = _vector(seed, point)
    new = x.copy()
    new[k] = -x[k]
    for s in range(len(x)):
        if s == k or eps[s, k] == 0:
            continue
        sgn = 1 if eps[s, k] > 0 else -1
        new[s] = x[s] - eps[s, k] * np.logaddexp(0.0, -sgn * x[k])
    return mutate(seed, e), _point(seed, new)


def lambda_flip(seed: Seed, point: dict[str, float], e: str) -> tuple[Seed, dict[str, float]]:
    """Lambda-length (Ptolemy) change under the flip at e; other coordinates are fixed."""
    k = seed.index(e)
    eps = seed.matrix()
    a = _vector(seed, point)
    pos = float(sum(eps[k, t] * a[t] for t in range(len(a)) if eps[k, t] > 0))
    neg = float(-sum(eps[k, t] * a[t] for t in range(len(a)) if eps[k, t] < 0))
    new = a.copy()
    new[k] = -a[k] + np.logaddexp(pos, neg)
    return mutate(seed, e), _point(seed, new)


def p_map(seed: Seed, point: dict[str, float]) -> dict[str, float]:
    """The linear map from lambda-lengths to shearing coordinates: x = eps . a."""
    return _point(seed, seed.matrix() @ _vector(seed, point))


def shear_jacobian(seed: Seed, point: dict[str, float], e: str) -> np.ndarray:
    """Closed-form Jacobian of shear_flip at the given point."""
    k = seed.index(e)
    eps = seed.matrix()
    x = _vector(seed, point)
    n = len(x)
    jac = np.eye(n)
    jac[k, k] = -1.0
    for s in range(n):
        if s == k or eps[s, k] == 0:
            continue
        sgn = 1 if eps[s, k] > 0 else -1
        sigmoid = 1.0 / (1.0 + math.exp(sgn * x[k]))
        jac[s, k] = abs(eps[s, k]) * sigmoid
    return jac


# ---------------------------------------------------------------------------
# Quantum logarithm and dilogarithm
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class QuantumEvalParams:
    """Evaluation parameters for the contour integrals.

    The contour runs along Im t = contour_offset (default min(1, 1/h)/2),
    between the origin and the first poles of 1/(sh(pi t) sh(pi h t)).
    """

    h: float
    quad_tolerance: float = 1e-9
    contour_offset: float | None = None
    t_max: float | None = None

    def __post_init__(self):
        if self.h <= 0:
            raise DomainViolationError("the Planck parameter h must be positive")
        delta = self.contour_offset
        if delta is None:
            delta = min(1.0, 1.0 / self.h) / 2.0
        if not 0 < delta < min(1.0, 1.0 / self.h):
            raise DomainViolationError("contour offset must avoid the poles at i and i/h")
        object.__setattr__(self, "contour_offset", delta)


def _truncation(z: complex, params: QuantumEvalParams) -> float:
    h, delta = params.h, params.contour_offset
    margin = math.pi * (1 + h) - abs(z.imag)
    if margin <= 0:
        raise DomainViolationError(
            f"|Im z| = {abs(z.imag):.3f} outside the convergence strip pi(1+h) = {math.pi * (1 + h):.3f}"
        )
    if params.t_max is not None:
        return params.t_max
    # envelope exp(delta*|Re z|) * exp(-margin*|s|) / (sh(pi s) sh(pi h s) growth)
    budget = math.log(400.0 / (params.quad_tolerance * margin)) + delta * abs(z.real)
    return max(4.0, budget / margin)


def _contour_integral(z: complex, params: QuantumEvalParams, extra_t: bool) -> complex:
    """Integral of exp(-itz) / (sh(pi t) sh(pi h t) [t]) over Im t = delta."""
    h, delta = params.h, params.contour_offset
    big_t = _truncation(z, params)

    def integrand(s: float) -> complex:
        t = complex(s, delta)
        denom = np.sinh(math.pi * t) * np.sinh(math.pi * h * t)
        if extra_t:
            denom = denom * t
        return np.exp(-1j * t * z) / denom

    tol = params.quad_tolerance * 1e-2
    re, re_err = quad(lambda s: integrand(s).real, -big_t, big_t, epsabs=tol, epsrel=tol, limit=400)
    im, im_err = quad(lambda s: integrand(s).imag, -big_t, big_t, epsabs=tol, epsrel=tol, limit=400)
    if re_err + im_err > params.quad_tolerance * 10 + 1e-12:
        raise NonConvergentError(
            f"quadrature error {re_err + im_err:.2e} above tolerance {params.quad_tolerance:.2e}"
        )
    return complex(re, im)


def quantum_log(z: complex, params: QuantumEvalParams) -> complex:
    """phi_h(z) = -(pi h / 2) * integral of exp(-itz)/(sh(pi t) sh(pi h t)) dt.

    Satisfies phi(z) - phi(-z) = z, phi -> log(1 + exp(z)) as h -> 0, the
    modular identity phi_h(z)/h = phi_{1/h}(z/h) and conj-symmetry.
    """
    z = complex(z)
    return -(math.pi * params.h / 2.0) * _contour_integral(z, params, extra_t=False)


def log_quantum_dilog(z: complex, params: QuantumEvalParams) -> complex:
    """log Phi_h(z) = -(1/4) * integral of exp(-itz)/(sh(pi t) sh(pi h t) t) dt."""
    z = complex(z)
    return -0.25 * _contour_integral(z, params, extra_t=True)


def quantum_dilog(z: complex, params: QuantumEvalParams) -> complex:
    """The quantum dilogarithm Phi_h(z) = exp(log_quantum_dilog(z))."""
    return complex(np.exp(log_quantum_dilog(z, params)))
