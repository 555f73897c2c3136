"""Eichler-Selberg trace formula for T_n on S_k(Gamma_0(N)), in exact arithmetic.

``Tr T_n = A1 + A2 + A3 + A4`` where A1 is the identity term, A2 the elliptic
term (class numbers), A3 the hyperbolic divisor term and A4 the weight-2
correction.  Every term is an exact :class:`~fractions.Fraction`; only the sum
is guaranteed integral, and a non-integral sum raises :class:`TraceIntegralityError`.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence, Tuple

from .arith import (
    divisors,
    euler_phi,
    factor,
    is_square,
    lucas_weight,
    num_divisors,
    psi,
    sigma,
)
from .quadforms import class_number_weighted, is_discriminant

BRUTE_FORCE_LIMIT = 10**6


class DomainError(ValueError):
    """Input outside the domain of the formula; ``reason`` is machine-readable."""

    def __init__(self, reason: str, message: str):
        super().__init__(message)
        self.reason = reason


class TraceIntegralityError(ArithmeticError):
    """The four terms summed to a non-integer: a transcription bug, not bad input."""


@dataclass(frozen=True)
class TraceRequest:
    n: int
    N: int
    k: int

    def __post_init__(self):
        for name in ("n", "N", "k"):
            v = getattr(self, name)
            if not isinstance(v, int) or isinstance(v, bool):
                raise DomainError("not_an_integer", f"{name} must be an int, got {v!r}")
        if self.n < 1:
            raise DomainError("bad_index", f"n must be positive, got {self.n}")
        if self.N < 1:
            raise DomainError("bad_level", f"level must be positive, got {self.N}")
        if self.k % 2 or self.k < 2:
            raise DomainError("odd_or_small_weight", f"weight must be even and >= 2, got {self.k}")
        if math.gcd(self.n, self.N) != 1:
            raise DomainError(
                "n_not_coprime_to_level", f"gcd(n={self.n}, N={self.N}) != 1"
            )


@dataclass(frozen=True)
class TraceBreakdown:
    a1: Fraction
    a2: Fraction
    a3: Fraction
    a4: Fraction
    total: int


def congruence_count(t: int, n: int, K: int) -> int:
    """Number of x mod K with x^2 - t x + n = 0 (mod K)."""
    if K < 1:
        raise ValueError(f"modulus must be positive, got {K}")
    if K <= BRUTE_FORCE_LIMIT:
        return _count_brute(t % K, n % K, K)
    # multiplicative in K by CRT
    return math.prod(_count_brute(t % q, n % q, q) for q in (p**e for p, e in factor(K)))


@lru_cache(maxsize=None)
def _count_brute(t: int, n: int, K: int) -> int:
    return sum(1 for x in range(K) if (x * x - t * x + n) % K == 0)


def mu_weight(t: int, g: int, n: int, N: int) -> Fraction:
    """psi(N) / psi(N / N_g) times the number of x mod N solving x^2 - t x + n = 0 mod N N_g.

    N_g = gcd(N, g).  When g^2 divides t^2 - 4n the solutions mod N N_g are a
    union of classes mod N, so the count mod N is M(t, n, N N_g) / N_g.
    Counting residues mod N N_g instead breaks integrality of the trace as soon
    as N_g > 1.
    """
    if g < 1:
        raise ValueError(f"g must be positive, got {g}")
    Ng = math.gcd(N, g)
    return Fraction(psi(N), psi(N // Ng)) * Fraction(congruence_count(t, n, N * Ng), Ng)


def _check(req: TraceRequest) -> TraceRequest:
    if not isinstance(req, TraceRequest):
        raise TypeError(f"expected TraceRequest, got {type(req).__name__}")
    return req


def term_a1(req: TraceRequest) -> Fraction:
    n, N, k = _check(req).n, req.N, req.k
    if not is_square(n):
        return Fraction(0)
    return Fraction(n ** (k // 2 - 1) * (k - 1) * psi(N), 12)


@lru_cache(maxsize=None)
def _class_terms(t: int, n: int) -> Tuple[Tuple[int, Fraction], ...]:
    """Pairs (g, h_w((t^2-4n)/g^2)) over admissible g."""
    disc = t * t - 4 * n
    out = []
    for g in _square_divisor_roots(-disc):
        d = disc // (g * g)
        if is_discriminant(d):
            out.append((g, class_number_weighted(d)))
    return tuple(out)


def _square_divisor_roots(m: int) -> list:
    roots = [1]
    for p, e in factor(m):
        roots = [r * p**i for r in roots for i in range(e // 2 + 1)]
    return sorted(roots)


@lru_cache(maxsize=None)
def elliptic_inner_sum(t: int, n: int, N: int) -> Fraction:
    """Sum over g of h_w((t^2-4n)/g^2) * mu(t, g, n) at level N."""
    return sum(
        (hw * mu_weight(t, g, n, N) for g, hw in _class_terms(t, n)), Fraction(0)
    )


def term_a2(req: TraceRequest) -> Fraction:
    n, N, k = _check(req).n, req.N, req.k
    t_max = math.isqrt(4 * n - 1)
    # the summand is even in t: G_k is even for even k, the congruence count
    # is invariant under x -> -x, and the class terms depend on t^2 only
    total = lucas_weight(0, n, k) * elliptic_inner_sum(0, n, N)
    for t in range(1, t_max + 1):
        total += 2 * lucas_weight(t, n, k) * elliptic_inner_sum(t, n, N)
    return -total / 2


def term_a2_full(req: TraceRequest) -> Fraction:
    """A2 summed naively over every t with t^2 < 4n (used as a check)."""
    n, N, k = _check(req).n, req.N, req.k
    t_max = math.isqrt(4 * n - 1)
    total = Fraction(0)
    for t in range(-t_max, t_max + 1):
        inner = sum(
            (hw * mu_weight(t, g, n, N) for g, hw in _class_terms(t, n)), Fraction(0)
        )
        total += lucas_weight(t, n, k) * inner
    return -total / 2


@lru_cache(maxsize=None)
def _cusp_count(N: int, gap: int) -> int:
    # sum of phi(gcd(c, N/c)) over c | N with gcd(c, N/c) dividing gcd(N, gap)
    target = math.gcd(N, gap)
    total = 0
    for c in divisors(N):
        g = math.gcd(c, N // c)
        if target % g == 0:
            total += euler_phi(g)
    return total


def term_a3(req: TraceRequest) -> Fraction:
    n, N, k = _check(req).n, req.N, req.k
    total = Fraction(0)
    for d in divisors(n):
        if d * d > n:
            break
        contrib = Fraction(d ** (k - 1) * _cusp_count(N, n // d - d))
        if d * d == n:
            contrib /= 2
        total += contrib
    return -total


def term_a4(req: TraceRequest) -> Fraction:
    n, N, k = _check(req).n, req.N, req.k
    if k != 2:
        return Fraction(0)
    # general form sums t | n with gcd(N, n/t) = 1; coprimality of n and N
    # makes that sigma(n)
    return Fraction(sigma(n))


def trace(req: TraceRequest) -> TraceBreakdown:
    """Exact trace of T_n on S_k(Gamma_0(N)) with its term-by-term breakdown.

    >>> trace(TraceRequest(n=2, N=1, k=12)).total
    -24
    """
    _check(req)
    a1, a2, a3, a4 = term_a1(req), term_a2(req), term_a3(req), term_a4(req)
    s = a1 + a2 + a3 + a4
    if s.denominator != 1:
        raise TraceIntegralityError(
            f"non-integral trace {s} for n={req.n}, N={req.N}, k={req.k}"
        )
    return TraceBreakdown(a1, a2, a3, a4, int(s))


@lru_cache(maxsize=None)
def trace_value(n: int, N: int, k: int) -> int:
    """Cached integer trace; ``trace_value(1, N, k)`` is dim S_k(Gamma_0(N))."""
    return trace(TraceRequest(n, N, k)).total


def dimension(N: int, k: int) -> int:
    return trace_value(1, N, k)


def prop_p1_bound(m: Sequence[int], p: Sequence[int], N: int) -> float:
    """prod p_i^(3 m_i / 2) * prod m_i * d(N) * sqrt(N) * log(4 prod p_i^m_i).

    The implied constant is taken to be 1.
    """
    if len(m) != len(p) or not p:
        raise ValueError("need equally many exponents and primes (at least one)")
    if len(set(p)) != len(p):
        raise ValueError(f"primes must be distinct, got {list(p)}")
    if any(e < 1 for e in m):
        raise ValueError("exponents must be >= 1")
    n = math.prod(q**e for q, e in zip(p, m))
    return (
        math.prod(q ** (1.5 * e) for q, e in zip(p, m))
        * math.prod(m)
        * num_divisors(N)
        * math.sqrt(N)
        * math.log(4 * n)
    )


def clear_caches() -> None:
    for f in (_count_brute, _class_terms, elliptic_inner_sum, _cusp_count, trace_value):
        f.cache_clear()
