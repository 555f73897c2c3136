"""Exact polynomials over Z/Q and Sturm-sequence real root isolation.

Polynomials are coefficient lists, lowest degree first.  Root brackets use
exact rational endpoints, so every isolated root comes with a certified
interval rather than a floating estimate.
"""
from __future__ import annotations

import math
from fractions import Fraction
from typing import List, Sequence, Tuple

Poly = List  # list of int or Fraction, low -> high


def trim(p: Sequence) -> list:
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return p


def degree(p: Sequence) -> int:
    return len(trim(p)) - 1


def evaluate(p: Sequence, x):
    acc = 0
    for c in reversed(p):
        acc = acc * x + c
    return acc


def derivative(p: Sequence) -> list:
    return [i * c for i, c in enumerate(p)][1:]


def mul(p: Sequence, q: Sequence) -> list:
    if not p or not q:
        return []
    out = [0] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(q):
                out[i + j] += a * b
    return out


def sub(p: Sequence, q: Sequence) -> list:
    n = max(len(p), len(q))
    return trim(
        [(p[i] if i < len(p) else 0) - (q[i] if i < len(q) else 0) for i in range(n)]
    )


def divmod_poly(a: Sequence, b: Sequence) -> Tuple[list, list]:
    a = [Fraction(c) for c in trim(a)]
    b = [Fraction(c) for c in trim(b)]
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 0)
    lead = b[-1]
    while len(a) >= len(b) and a:
        shift = len(a) - len(b)
        f = a[-1] / lead
        q[shift] = f
        for i, c in enumerate(b):
            a[i + shift] -= f * c
        a = trim(a)
    return q, a


def primitive_part(p: Sequence) -> List[int]:
    """Integer polynomial proportional to ``p`` by a *positive* factor."""
    p = trim(p)
    if not p:
        return []
    fr = [Fraction(c) for c in p]
    den = math.lcm(*(c.denominator for c in fr))
    ints = [int(c * den) for c in fr]
    g = math.gcd(*ints)
    return [c // g for c in ints]


def gcd_poly(a: Sequence, b: Sequence) -> List[int]:
    a, b = primitive_part(a), primitive_part(b)
    while b:
        _, r = divmod_poly(a, b)
        a, b = b, primitive_part(r)
    if a and a[-1] < 0:
        a = [-c for c in a]
    return a


def squarefree_part(p: Sequence) -> List[int]:
    g = gcd_poly(p, derivative(p))
    q, r = divmod_poly(p, g)
    assert not r
    return primitive_part(q)


def charpoly(matrix: Sequence[Sequence[int]]) -> List[int]:
    """Characteristic polynomial det(x I - A) of an integer matrix, by Faddeev-LeVerrier.

    Returned monic, lowest degree first.  For integer A every intermediate
    matrix is integral and each division by ``step`` is exact.
    """
    n = len(matrix)
    A = [[int(x) for x in row] for row in matrix]
    coeffs = [0] * (n + 1)
    coeffs[n] = 1
    M = [[0] * n for _ in range(n)]
    for step in range(1, n + 1):
        # M <- A M + c_{n-step+1} I
        M = _matmul(A, M)
        for i in range(n):
            M[i][i] += coeffs[n - step + 1]
        AM = _matmul(A, M)
        c, rem = divmod(-sum(AM[i][i] for i in range(n)), step)
        if rem:
            raise ArithmeticError("characteristic polynomial is not integral")
        coeffs[n - step] = c
    return coeffs


def _matmul(A, B):
    n, m, p = len(A), len(B), len(B[0]) if B else 0
    return [[sum(A[i][l] * B[l][j] for l in range(m)) for j in range(p)] for i in range(n)]


def sturm_sequence(p: Sequence) -> List[List[int]]:
    """Sturm chain p0 = p, p1 = p', p_{i+1} = -rem(p_{i-1}, p_i), made primitive."""
    chain = [primitive_part(p), primitive_part(derivative(p))]
    while degree(chain[-1]) > 0:
        _, r = divmod_poly(chain[-2], chain[-1])
        r = primitive_part([-c for c in r])
        if not r:
            break
        chain.append(r)
    return chain


def _sign_at(p: Sequence[int], x: Fraction) -> int:
    # sign of p(x) for x = u / v with v > 0, via integer Horner on v^deg p(u/v)
    u, v = x.numerator, x.denominator
    acc = 0
    vp = 1
    for c in reversed(p):
        acc = acc * u + c * vp
        vp *= v
    return (acc > 0) - (acc < 0)


def sign_variations(chain: Sequence[Sequence[int]], x: Fraction) -> int:
    signs = [s for s in (_sign_at(q, x) for q in chain) if s]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def root_bound(p: Sequence[int]) -> int:
    """Fujiwara bound: every root lies strictly inside (-B, B).

    B = 2 max_i |a_{n-i} / a_n|^(1/i), rounded up to an integer; unlike the
    Cauchy bound it stays within a factor 2 of the largest root modulus.
    """
    p = trim(p)
    n, lead = len(p) - 1, abs(p[-1])
    best = 0
    for i in range(1, n + 1):
        c = abs(p[n - i])
        if not c:
            continue
        q = -(-c // lead)  # ceil(|a_{n-i}| / |a_n|)
        if i == n:
            q = -(-q // 2)  # Fujiwara halves the constant-term ratio
        best = max(best, _iroot_ceil(q, i))
    return 2 * best + 1


def _iroot_ceil(x: int, i: int) -> int:
    """Smallest integer m >= 0 with m^i >= x."""
    if x <= 1:
        return x
    lo, hi = 1, 1 << -(-x.bit_length() // i)  # hi^i >= x
    while lo < hi:
        mid = (lo + hi) // 2
        if mid**i >= x:
            hi = mid
        else:
            lo = mid + 1
    return lo


def isolate_roots(p: Sequence[int]) -> List[Tuple[Fraction, Fraction]]:
    """Disjoint intervals (lo, hi] each holding exactly one distinct real root of p."""
    p = primitive_part(p)
    if degree(p) < 1:
        return []
    return _isolate_squarefree(squarefree_part(p))


def _isolate_squarefree(sq: List[int]) -> List[Tuple[Fraction, Fraction]]:
    chain = sturm_sequence(sq)
    B = Fraction(root_bound(sq))
    out = []
    stack = [(-B, B, sign_variations(chain, -B) - sign_variations(chain, B))]
    while stack:
        lo, hi, count = stack.pop()
        if count == 0:
            continue
        if count == 1:
            out.append((lo, hi))
            continue
        mid = (lo + hi) / 2
        vm = sign_variations(chain, mid)
        stack.append((lo, mid, sign_variations(chain, lo) - vm))
        stack.append((mid, hi, vm - sign_variations(chain, hi)))
    out.sort()
    return out


def refine_root(p: Sequence[int], lo: Fraction, hi: Fraction, width: Fraction) -> Tuple[Fraction, Fraction]:
    """Shrink (lo, hi] around its single simple root of squarefree p until hi - lo <= width."""
    s_hi = _sign_at(p, hi)
    if s_hi == 0:
        return hi, hi
    while hi - lo > width:
        mid = (lo + hi) / 2
        s = _sign_at(p, mid)
        if s == 0:
            return mid, mid
        if s == s_hi:
            hi = mid
        else:
            lo = mid
    return lo, hi


def real_roots(p: Sequence[int], width) -> List[Tuple[Fraction, Fraction]]:
    """Certified brackets of width <= ``width`` around each distinct real root, ascending."""
    width = Fraction(width)
    sq = squarefree_part(p)
    if degree(sq) < 1:
        return []
    return [refine_root(sq, lo, hi, width) for lo, hi in _isolate_squarefree(sq)]


def squarefree_factorization(p: Sequence) -> List[List[int]]:
    """Yun's algorithm: ``[f1, f2, ...]`` with p = c * f1 * f2^2 * ... and the f_i coprime."""
    p = primitive_part(p)
    out = []
    a = gcd_poly(p, derivative(p))
    b, _ = divmod_poly(p, a)
    c, _ = divmod_poly(derivative(p), a)
    d = sub(c, derivative(b))
    while degree(b) >= 1:
        g = gcd_poly(b, d)
        out.append(g)
        b, _ = divmod_poly(b, g)
        c, _ = divmod_poly(d, g)
        d = sub(c, derivative(b))
    return out


def root_multiplicities(p: Sequence[int], brackets: Sequence[Tuple[Fraction, Fraction]]) -> List[int]:
    """Multiplicity in ``p`` of the root inside each isolating bracket."""
    if degree(gcd_poly(p, derivative(p))) == 0:
        return [1] * len(brackets)
    factors = [f for f in squarefree_factorization(p)]
    chains = [sturm_sequence(f) if degree(f) >= 1 else None for f in factors]
    mults = []
    for lo, hi in brackets:
        hits = [
            i + 1
            for i, (f, chain) in enumerate(zip(factors, chains))
            if chain is not None and _has_root_in(f, chain, lo, hi)
        ]
        if len(hits) != 1:
            raise ArithmeticError(f"bracket ({lo}, {hi}] does not isolate a single root")
        mults.append(hits[0])
    return mults


def _has_root_in(q, chain, lo, hi) -> bool:
    if lo == hi:
        return _sign_at(q, lo) == 0
    return sign_variations(chain, lo) - sign_variations(chain, hi) > 0
