"""Randomized check suites behind `quant check`: each produces residual rows.

A row is {suite, check, case, residual, tolerance, status}; a suite passes when
every row does.  All randomness flows from one seed for reproducibility.
"""

from __future__ import annotations

import cmath
import math
import random

import numpy as np

from .kernel import Frac, INF
from .ptolemy import (
    MarkedTessellation,
    act_word,
    base_tessellation,
    flip,
    format_edge,
    triangle,
)
from .quantization import (
    QuantumEvalParams,
    epsilon_of,
    lambda_flip,
    log_quantum_dilog,
    mutate,
    p_map,
    quantum_dilog,
    quantum_log,
    shear_flip,
    shear_jacobian,
)

SUITES = ("mutation", "pentagon", "poisson", "qlog", "qdilog")


def _row(suite: str, check: str, case: str, residual: float, tolerance: float) -> dict:
    return {
        "suite": suite,
        "check": check,
        "case": case,
        "residual": residual,
        "tolerance": tolerance,
        "status": "pass" if residual <= tolerance else "fail",
    }


def _random_tessellation(rng: random.Random, steps: int = 3) -> MarkedTessellation:
    t = base_tessellation()
    for _ in range(steps):
        t = act_word(t, rng.choice(["A", "B", "AB", "BA", "BB"]))
    return t


def _random_point(rng: random.Random, seed) -> dict[str, float]:
    return {e: rng.uniform(-2.5, 2.5) for e in seed.edges}


def suite_mutation(seed_value: int = 0, cases: int = 50) -> list[dict]:
    rng = random.Random(seed_value)
    rows = []
    for k in range(cases):
        t = _random_tessellation(rng)
        interior = [e for e in t.support_edges() if len(t.triangles_on(e)) == 2]
        e = rng.choice(interior)
        order = sorted(t.support_edges(), key=format_edge)
        seed = epsilon_of(t, order)
        t2 = flip(t, e)
        diag = next(iter(t2.support_edges() - t.support_edges()))
        mutated = mutate(seed, format_edge(e))
        relabelled = epsilon_of(t2, [diag if x == e else x for x in order])
        residual = float(np.abs(mutated.matrix() - relabelled.matrix()).max())
        rows.append(_row("mutation", "epsilon_flip_commutes", f"case{k}", residual, 0.0))
        twice = mutate(mutated, format_edge(e))
        rows.append(
            _row(
                "mutation",
                "mutation_involutive",
                f"case{k}",
                float(np.abs(twice.matrix() - seed.matrix()).max()),
                0.0,
            )
        )
    return rows


def _pentagon_tessellation() -> MarkedTessellation:
    return MarkedTessellation(
        frozenset(
            {
                triangle(Frac(-1), Frac(-1, 2), Frac(0)),
                triangle(Frac(-1), Frac(0), INF),
                triangle(Frac(0), Frac(1), INF),
            }
        ),
        (Frac(0), INF),
    )


def suite_pentagon(seed_value: int = 0, cases: int = 20) -> list[dict]:
    from .ptolemy import edge

    rng = random.Random(seed_value)
    seed = epsilon_of(_pentagon_tessellation())
    e = format_edge(edge(Frac(0), INF))
    f = format_edge(edge(Frac(-1), Frac(0)))
    rows = []
    for k in range(cases):
        pt = _random_point(rng, seed)
        s, p = seed, dict(pt)
        for step in range(5):
            s, p = shear_flip(s, p, e if step % 2 == 0 else f)
        expected = dict(pt)
        expected[e], expected[f] = pt[f], pt[e]
        residual = max(abs(p[name] - expected[name]) for name in p)
        rows.append(_row("pentagon", "five_flips_close", f"case{k}", residual, 1e-9))
        i, j = seed.index(e), seed.index(f)
        perm = list(range(len(seed.edges)))
        perm[i], perm[j] = j, i
        eps_residual = float(np.abs(s.matrix() - seed.matrix()[np.ix_(perm, perm)]).max())
        rows.append(_row("pentagon", "matrix_exchanges_diagonals", f"case{k}", eps_residual, 0.0))
    return rows


def suite_poisson(seed_value: int = 0, cases: int = 50) -> list[dict]:
    rng = random.Random(seed_value)
    rows = []
    for k in range(cases):
        seed = epsilon_of(_random_tessellation(rng))
        pt = _random_point(rng, seed)
        e = rng.choice(seed.edges)
        jac = shear_jacobian(seed, pt, e)
        eps = seed.matrix().astype(float)
        eps2 = mutate(seed, e).matrix().astype(float)
        rows.append(
            _row(
                "poisson",
                "transport_J_eps_Jt",
                f"case{k}",
                float(np.abs(jac @ eps @ jac.T - eps2).max()),
                1e-9,
            )
        )
        a = _random_point(rng, seed)
        sl, a2 = lambda_flip(seed, a, e)
        lhs = p_map(sl, a2)
        _, rhs = shear_flip(seed, p_map(seed, a), e)
        rows.append(
            _row(
                "poisson",
                "p_map_equivariance",
                f"case{k}",
                max(abs(lhs[n] - rhs[n]) for n in rhs),
                1e-9,
            )
        )
        s2, p2 = shear_flip(seed, pt, e)
        _, p3 = shear_flip(s2, p2, e)
        rows.append(
            _row(
                "poisson",
                "shear_involutive",
                f"case{k}",
                max(abs(p3[n] - pt[n]) for n in pt),
                1e-12,
            )
        )
    return rows


_QLOG_Z = (-2.0, -1.0, 0.0, 1.0, 2.0)
_QLOG_H = (0.3, 0.7, 1.3)


def suite_qlog(seed_value: int = 0, cases: int = 0) -> list[dict]:
    rows = []
    for h in _QLOG_H:
        params = QuantumEvalParams(h)
        for z in _QLOG_Z:
            residual = abs(quantum_log(z, params) - quantum_log(-z, params) - z)
            rows.append(_row("qlog", "difference_identity", f"h={h},z={z}", residual, 1e-6))
    params = QuantumEvalParams(0.001)
    rows.append(
        _row(
            "qlog",
            "classical_limit",
            "h=0.001,z=1",
            abs(quantum_log(1.0, params) - math.log(1 + math.e)),
            0.01,
        )
    )
    for h in (0.3, 0.7):
        p1, p2 = QuantumEvalParams(h), QuantumEvalParams(1 / h)
        for z in (-1.0, 0.5, 1.5):
            residual = abs(quantum_log(z, p1) / h - quantum_log(z / h, p2))
            rows.append(_row("qlog", "modular_identity", f"h={h},z={z}", residual, 1e-6))
    params = QuantumEvalParams(0.7)
    for z in (0.5 + 0.4j, -1.0 + 0.2j):
        residual = abs(quantum_log(z, params).conjugate() - quantum_log(z.conjugate(), params))
        rows.append(_row("qlog", "conjugation_symmetry", f"z={z}", residual, 1e-6))
    sups = []
    for h in (0.1, 0.03, 0.01, 0.003):
        params = QuantumEvalParams(h)
        sups.append(max(abs(quantum_log(z, params) - math.log(1 + math.exp(z))) for z in _QLOG_Z))
    monotone = all(a > b for a, b in zip(sups, sups[1:]))
    rows.append(_row("qlog", "limit_monotone", "h grid", 0.0 if monotone else 1.0, 0.0))
    return rows


def suite_qdilog(seed_value: int = 0, cases: int = 0) -> list[dict]:
    rows = []
    for h in _QLOG_H:
        params = QuantumEvalParams(h)
        for z in (0.5, -1.0, 1.2 + 0.3j):
            lhs = quantum_dilog(z, params) * quantum_dilog(-z, params)
            rhs = cmath.exp(z * z / (4j * math.pi * h)) * cmath.exp(
                -1j * math.pi * (h + 1 / h) / 12
            )
            rows.append(_row("qdilog", "product_identity", f"h={h},z={z}", abs(lhs - rhs), 1e-6))
    params = QuantumEvalParams(0.7)
    step = 1e-4
    for z in (0.3, -0.8, 0.5 + 0.2j):
        dlog = (log_quantum_dilog(z + step, params) - log_quantum_dilog(z - step, params)) / (
            2 * step
        )
        residual = abs(2j * math.pi * params.h * dlog - quantum_log(z, params))
        rows.append(_row("qdilog", "log_derivative_identity", f"z={z}", residual, 1e-4))
    p1, p2 = QuantumEvalParams(0.4), QuantumEvalParams(2.5)
    for z in (0.6, -0.9):
        residual = abs(quantum_dilog(z, p1) - quantum_dilog(z / 0.4, p2))
        rows.append(_row("qdilog", "modular_identity", f"z={z}", residual, 1e-6))
    return rows


def run_suite(name: str, seed_value: int = 0) -> list[dict]:
    table = {
        "mutation": suite_mutation,
        "pentagon": suite_pentagon,
        "poisson": suite_poisson,
        "qlog": suite_qlog,
        "qdilog": suite_qdilog,
    }
    if name not in table:
        raise KeyError(f"unknown suite {name!r}; choose from {SUITES}")
    return table[name](seed_value)
