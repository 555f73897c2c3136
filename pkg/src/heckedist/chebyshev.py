"""Chebyshev polynomials X_m and normalized-trace moments Tr T'_{p^m}.

X_m(2 cos t) = sin((m+1) t) / sin t, so X_m(T'_p) = T'_{p^m} and
2 cos(m t) = X_m - X_{m-2}.  Everything here is exact: normalized traces are
:class:`~heckedist.arith.Surd` values ``q * sqrt(r)``.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import List, Sequence, Tuple

from .arith import Surd
from .trace import DomainError, TraceRequest, trace_value


@dataclass(frozen=True)
class ChebyshevPoly:
    degree: int
    coeffs: Tuple[int, ...]  # lowest degree first, monic

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc


@lru_cache(maxsize=None)
def chebyshev(m: int) -> ChebyshevPoly:
    """X_m from X_0 = 1, X_1 = x, X_m = x X_{m-1} - X_{m-2}.

    >>> chebyshev(2).coeffs
    (-1, 0, 1)
    """
    if m < 0:
        raise ValueError(f"degree must be >= 0, got {m}")
    if m == 0:
        return ChebyshevPoly(0, (1,))
    if m == 1:
        return ChebyshevPoly(1, (0, 1))
    a, b = chebyshev(m - 2).coeffs, chebyshev(m - 1).coeffs
    out = [0] + list(b)
    for i, c in enumerate(a):
        out[i] -= c
    return ChebyshevPoly(m, tuple(out))


def cosine_poly(m: int) -> Tuple[int, ...]:
    """Coefficients of the polynomial P with P(2 cos t) = 2 cos(m t)."""
    if m == 0:
        return (2,)
    if m == 1:
        return chebyshev(1).coeffs
    hi, lo = chebyshev(m).coeffs, chebyshev(m - 2).coeffs
    return tuple(c - (lo[i] if i < len(lo) else 0) for i, c in enumerate(hi))


def normalized_trace(n: int, N: int, k: int) -> Surd:
    """Tr T'_n = Tr T_n / n^((k-1)/2), exactly."""
    return Surd.normalized_trace(trace_value(n, N, k), n, k)


@dataclass(frozen=True)
class MomentVector:
    """Traces Tr T_{p^m} for m = 0..M; entry m is that trace over p^(m(k-1)/2)."""

    p: int
    N: int
    k: int
    traces: Tuple[int, ...]

    @property
    def entries(self) -> List[Surd]:
        return [Surd.normalized_trace(t, self.p**m, self.k) for m, t in enumerate(self.traces)]

    def floats(self) -> List[float]:
        return [float(e) for e in self.entries]

    def scale_exponent_twice(self, m: int) -> int:
        """2 * m (k-1) / 2, the doubled exponent of p dividing entry m."""
        return m * (self.k - 1)


def _check_prime_level(p: int, N: int, k: int) -> None:
    TraceRequest(p, N, k)  # raises DomainError on bad input


def moment_vector(p: int, N: int, k: int, M_max: int) -> MomentVector:
    _check_prime_level(p, N, k)
    if M_max < 0:
        raise ValueError(f"M_max must be >= 0, got {M_max}")
    return MomentVector(p, N, k, tuple(trace_value(p**m, N, k) for m in range(M_max + 1)))


def cosine_moment_sum(p: int, m: int, N: int, k: int) -> Surd:
    """Sum over eigenforms of 2 cos(m theta(p)), from traces only."""
    _check_prime_level(p, N, k)
    if m < 1:
        raise ValueError("m must be >= 1 (m = 0 is twice the dimension)")
    value = normalized_trace(p**m, N, k)
    if m >= 2:
        value = value - normalized_trace(p ** (m - 2), N, k)
    return value


@dataclass(frozen=True)
class JointMomentRequest:
    primes: Tuple[int, ...]
    exponents: Tuple[int, ...]
    N: int
    k: int

    def __post_init__(self):
        if not self.primes or len(self.primes) != len(self.exponents):
            raise ValueError("need one exponent per prime, and at least one prime")
        if len(set(self.primes)) != len(self.primes):
            raise DomainError("repeated_prime", f"primes must be distinct: {self.primes}")
        for p in self.primes:
            _check_prime_level(p, self.N, self.k)
        if any(m < 1 for m in self.exponents):
            raise ValueError("exponents must be >= 1")


def joint_cosine_product(req: JointMomentRequest) -> Surd:
    """Sum over eigenforms of prod_i 2 cos(m_i theta_i), expanded into traces.

    prod_i (X_{m_i} - X_{m_i - 2})(T'_{p_i}) is a signed sum of T'_{prod p_i^b_i}
    with b_i in {m_i, m_i - 2}; its trace is the requested sum because all
    T_{p_i} are simultaneously diagonalizable.
    """
    total = Surd(0)
    for sign, n in expand_terms(req):
        total = total + sign * normalized_trace(n, req.N, req.k)
    return total


def expand_terms(req: JointMomentRequest) -> List[Tuple[int, int]]:
    """The (sign, n) pairs of the joint expansion."""
    options = [((m, 1),) if m == 1 else ((m, 1), (m - 2, -1)) for m in req.exponents]
    return [
        (
            math.prod(s for _, s in choice),
            math.prod(p**b for p, (b, _) in zip(req.primes, choice)),
        )
        for choice in itertools.product(*options)
    ]


def matrix_polynomial(coeffs: Sequence, A: Sequence[Sequence]) -> List[List]:
    """P(A) for a square matrix A by Horner's rule (exact for exact entries)."""
    n = len(A)
    result = [[0] * n for _ in range(n)]
    for c in reversed(coeffs):
        result = [[sum(result[i][l] * A[l][j] for l in range(n)) for j in range(n)] for i in range(n)]
        for i in range(n):
            result[i][i] += c
    return result


def weyl_sum_from_eigenvalues(values: Sequence[float], m: int) -> float:
    """Sum of X_m over a list of normalized eigenvalues (float check path)."""
    poly = chebyshev(m)
    return math.fsum(poly(v) for v in values)
