"""Quick built-in cross-checks behind ``heckedist verify``.

Each check compares two independent routes and returns a dict with
``name``, ``passed`` and a short ``detail`` string.
"""
from __future__ import annotations

import math
from typing import Callable, Dict, List

from .chebyshev import cosine_moment_sum
from .levelone import delta_series, eigen_table, hecke_matrix
from .measure import cdf, chebyshev_moment_of_measure, integrate_against, weyl_limit
from .chebyshev import chebyshev
from .trace import dimension, trace_value


def _tau_vs_trace() -> str:
    delta = delta_series(12)
    bad = [n for n in range(2, 11) if trace_value(n, 1, 12) != delta[n]]
    assert not bad, f"mismatch at n = {bad}"
    return "Tr T_n on S_12(1) = tau(n) for n = 2..10"


def _level11() -> str:
    # a_2 of y^2 + y = x^3 - x^2 - 10x - 20: 2 + 1 - #E(F_2)
    pts = 1 + sum(1 for x in range(2) for y in range(2) if (y * y + y - x**3 + x * x + 10 * x + 20) % 2 == 0)
    assert trace_value(2, 11, 2) == 3 - pts
    return f"a_2 = {3 - pts} on level 11"


def _hecke_vs_trace() -> str:
    for k in (24, 36):
        for p in (2, 3, 5):
            assert hecke_matrix(k, p).trace() == trace_value(p, 1, k), (k, p)
    return "matrix traces agree for k in {24, 36}, p in {2, 3, 5}"


def _dimension_level1() -> str:
    for k in range(2, 61, 2):
        expected = 0 if k == 2 else (k // 12 - 1 if k % 12 == 2 else k // 12)
        assert dimension(1, k) == expected, k
    return "dim S_k(1) for k <= 60"


def _moments_vs_eigen() -> str:
    table = eigen_table(36, [3])
    for m in range(1, 5):
        direct = math.fsum(2 * math.cos(m * a[0]) for a in table.angles)
        assert abs(direct - float(cosine_moment_sum(3, m, 1, 36))) < 1e-9, m
    return "eigenvalue cosine sums match trace expression on S_36(1), p = 3"


def _quadrature() -> str:
    for p in (2, 3, 5):
        assert abs(cdf(p, -2, 2) - 1) < 1e-10
        for m in range(0, 7):
            q = integrate_against(p, chebyshev(m))
            assert abs(q - float(chebyshev_moment_of_measure(p, m))) < 1e-8, (p, m)
            c = integrate_against(p, lambda x: math.cos(m * math.acos(max(-1, min(1, x / 2)))))
            assert abs(c - float(weyl_limit(p, m).value)) < 1e-8, (p, m)
    return "mass, X_m moments and c_m by quadrature vs closed forms"


CHECKS: List[Callable[[], str]] = [
    _tau_vs_trace,
    _level11,
    _hecke_vs_trace,
    _dimension_level1,
    _moments_vs_eigen,
    _quadrature,
]


def run_checks() -> List[Dict]:
    out = []
    for check in CHECKS:
        name = check.__name__.lstrip("_")
        try:
            out.append({"name": name, "passed": True, "detail": check()})
        except Exception as exc:  # a failing check must not abort the others
            out.append({"name": name, "passed": False, "detail": f"{type(exc).__name__}: {exc}"})
    return out
