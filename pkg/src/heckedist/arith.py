"""Exact integer helpers: factorization, multiplicative functions, Lucas weights.

Rationals are plain :class:`fractions.Fraction` and integers are Python ints,
so nothing here can overflow.  Values of the form ``q * sqrt(r)`` that arise
from normalizing Hecke traces are carried by :class:`Surd`.
"""
from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache
from typing import List, Tuple

Factorization = List[Tuple[int, int]]

# Deterministic Miller-Rabin: the first 13 primes are a valid witness set
# for every n < 3.317e24.
_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)
_MR_LIMIT = 3317044064679887385961981
_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47)


def is_prime(n: int) -> bool:
    """Deterministic primality test for ``n < 3.3e24`` (trial division above)."""
    if n < 2:
        return False
    for p in _SMALL_PRIMES:
        if n % p == 0:
            return n == p
    if n >= _MR_LIMIT:
        return _trial_is_prime(n)
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_WITNESSES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _trial_is_prime(n: int) -> bool:
    i = 53
    while i * i <= n:
        if n % i == 0:
            return False
        i += 2
    return True


def _pollard_brent(n: int) -> int:
    # n is odd, composite and has no factor below 50.
    for c in range(1, 100):
        y, m, g, r, q = 2, 128, 1, 1, 1
        x = ys = 2
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = math.gcd(q, n)
                k += m
            r *= 2
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = math.gcd(abs(x - ys), n)
        if g != n:
            return g
    raise ArithmeticError(f"Pollard rho failed on {n}")


def _split(n: int, out: dict) -> None:
    if n == 1:
        return
    if is_prime(n):
        out[n] = out.get(n, 0) + 1
        return
    d = _pollard_brent(n)
    _split(d, out)
    _split(n // d, out)


@lru_cache(maxsize=65536)
def _factor_cached(n: int) -> Tuple[Tuple[int, int], ...]:
    found: dict = {}
    for p in _SMALL_PRIMES:
        while n % p == 0:
            found[p] = found.get(p, 0) + 1
            n //= p
    # cheap trial division keeps rho away from moderate inputs
    p = 53
    while p * p <= n and p < 10_000:
        while n % p == 0:
            found[p] = found.get(p, 0) + 1
            n //= p
        p += 2
    _split(n, found)
    return tuple(sorted(found.items()))


def factor(n: int) -> Factorization:
    """Return ``[(p, e), ...]`` with strictly increasing primes.

    >>> factor(12)
    [(2, 2), (3, 1)]
    """
    if not isinstance(n, int) or n < 1:
        raise ValueError(f"factor() needs a positive integer, got {n!r}")
    return list(_factor_cached(n))


def psi(N: int) -> int:
    """Index of Gamma_0(N) in SL_2(Z): N * prod_{p | N} (1 + 1/p)."""
    result = N
    for p, _ in factor(N):
        result = result // p * (p + 1)
    return result


def euler_phi(n: int) -> int:
    result = n
    for p, _ in factor(n):
        result = result // p * (p - 1)
    return result


def num_divisors(n: int) -> int:
    return math.prod(e + 1 for _, e in factor(n))


def nu(n: int) -> int:
    """Number of distinct prime divisors."""
    return len(factor(n))


def divisors(n: int) -> List[int]:
    divs = [1]
    for p, e in factor(n):
        divs = [d * p**i for d in divs for i in range(e + 1)]
    return sorted(divs)


def sigma(n: int, power: int = 1) -> int:
    return sum(d**power for d in divisors(n))


def is_square(n: int) -> bool:
    return n >= 0 and math.isqrt(n) ** 2 == n


def lucas_weight(t: int, n: int, k: int) -> int:
    """(rho^(k-1) - rhobar^(k-1)) / (rho - rhobar) for the roots of x^2 - t x + n.

    Computed by a_j = t a_{j-1} - n a_{j-2} with a_1 = 1, a_2 = t.
    """
    if k % 2 or k < 2:
        raise ValueError(f"weight must be even and >= 2, got {k}")
    prev, cur = 0, 1  # a_0, a_1
    for _ in range(k - 2):
        prev, cur = cur, t * cur - n * prev
    return cur


def squarefree_decomposition(n: int) -> Tuple[int, int]:
    """Return ``(s, r)`` with ``n == s*s*r`` and ``r`` squarefree."""
    s = r = 1
    for p, e in factor(n):
        s *= p ** (e // 2)
        if e % 2:
            r *= p
    return s, r


class Surd:
    """Exact real number ``coeff * sqrt(radicand)`` with squarefree radicand.

    Sums are only defined between surds sharing a radicand (or where one side
    is zero); that is always the case for the trace combinations used here.
    """

    __slots__ = ("coeff", "radicand")

    def __init__(self, coeff, radicand: int = 1):
        if radicand < 1:
            raise ValueError("radicand must be positive")
        s, r = squarefree_decomposition(radicand)
        self.coeff = Fraction(coeff) * s
        self.radicand = r if self.coeff else 1

    @classmethod
    def normalized_trace(cls, trace: int, n: int, k: int) -> "Surd":
        """The value ``trace / n^((k-1)/2)`` held exactly."""
        # 1/n^((k-1)/2) = sqrt(n) / n^(k/2)
        return cls(Fraction(trace, n ** (k // 2)), n)

    def __add__(self, other):
        other = _as_surd(other)
        if not other.coeff:
            return self
        if not self.coeff:
            return other
        if self.radicand != other.radicand:
            raise ValueError(
                f"cannot add surds with radicands {self.radicand} and {other.radicand}"
            )
        return Surd(self.coeff + other.coeff, self.radicand)

    __radd__ = __add__

    def __neg__(self):
        return Surd(-self.coeff, self.radicand)

    def __sub__(self, other):
        return self + (-_as_surd(other))

    def __rsub__(self, other):
        return _as_surd(other) - self

    def __mul__(self, other):
        other = _as_surd(other)
        g = math.gcd(self.radicand, other.radicand)
        r = (self.radicand // g) * (other.radicand // g)
        return Surd(self.coeff * other.coeff * g, r)

    __rmul__ = __mul__

    def __eq__(self, other):
        try:
            other = _as_surd(other)
        except TypeError:
            return NotImplemented
        return self.coeff == other.coeff and self.radicand == other.radicand

    def __hash__(self):
        return hash((self.coeff, self.radicand))

    def __float__(self):
        return float(self.coeff) * math.sqrt(self.radicand)

    def is_rational(self) -> bool:
        return self.radicand == 1

    def __repr__(self):
        if self.radicand == 1:
            return f"Surd({self.coeff})"
        return f"Surd({self.coeff} * sqrt({self.radicand}))"


def _as_surd(x) -> Surd:
    if isinstance(x, Surd):
        return x
    if isinstance(x, (int, Fraction)):
        return Surd(x)
    raise TypeError(f"cannot interpret {type(x).__name__} as a Surd")
