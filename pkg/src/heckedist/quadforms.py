"""Reduced positive definite binary quadratic forms and weighted class numbers."""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import List, Tuple

import numpy as np


@dataclass(frozen=True, order=True)
class ReducedForm:
    """Primitive reduced form ``a x^2 + b x y + c y^2`` of negative discriminant."""

    a: int
    b: int
    c: int

    def __post_init__(self):
        a, b, c = self.a, self.b, self.c
        if not (abs(b) <= a <= c):
            raise ValueError(f"{self} violates |b| <= a <= c")
        if (abs(b) == a or a == c) and b < 0:
            raise ValueError(f"{self} must have b >= 0 on the boundary")
        if b * b - 4 * a * c >= 0:
            raise ValueError(f"{self} is not positive definite")
        if math.gcd(a, b, c) != 1:
            raise ValueError(f"{self} is not primitive")

    @property
    def discriminant(self) -> int:
        return self.b * self.b - 4 * self.a * self.c


def check_discriminant(disc: int) -> int:
    if not isinstance(disc, (int, np.integer)):
        raise TypeError(f"discriminant must be an integer, got {disc!r}")
    disc = int(disc)
    if disc >= 0:
        raise ValueError(f"only negative discriminants are supported, got {disc}")
    if disc % 4 not in (0, 1):
        raise ValueError(f"discriminant {disc} is not 0 or 1 mod 4")
    return disc


def is_discriminant(disc: int) -> bool:
    return disc < 0 and disc % 4 in (0, 1)


@lru_cache(maxsize=None)
def _reduced_triples(disc: int) -> Tuple[Tuple[int, int, int], ...]:
    # Loop over 0 <= b <= sqrt(|D|/3) with b = D mod 2; then a runs over the
    # divisors of q = (b^2 - D)/4 with b <= a <= sqrt(q), and c = q / a.
    forms = []
    b_max = math.isqrt(-disc // 3)
    for b in range(disc & 1, b_max + 1, 2):
        q = (b * b - disc) // 4
        a_lo, a_hi = max(b, 1), math.isqrt(q)
        if a_lo > a_hi:
            continue
        if a_hi - a_lo > 64:
            cand = np.arange(a_lo, a_hi + 1, dtype=np.int64)
            a_vals = cand[q % cand == 0].tolist()
        else:
            a_vals = [a for a in range(a_lo, a_hi + 1) if q % a == 0]
        for a in a_vals:
            c = q // a
            if math.gcd(a, b, c) != 1:
                continue
            forms.append((a, b, c))
            if 0 < b < a < c:
                forms.append((a, -b, c))
    forms.sort()
    return tuple(forms)


def reduced_forms(disc: int) -> List[ReducedForm]:
    """All primitive reduced forms of discriminant ``disc``, sorted by (a, b, c).

    >>> [tuple(vars(f).values()) for f in reduced_forms(-23)]
    [(1, 1, 6), (2, -1, 3), (2, 1, 3)]
    """
    disc = check_discriminant(disc)
    return [ReducedForm(*t) for t in _reduced_triples(disc)]


def class_number(disc: int) -> int:
    return len(_reduced_triples(check_discriminant(disc)))


def class_number_weighted(disc: int) -> Fraction:
    """h(D), except h_w(-3) = 1/3 and h_w(-4) = 1/2."""
    disc = check_discriminant(disc)
    if disc == -3:
        return Fraction(1, 3)
    if disc == -4:
        return Fraction(1, 2)
    return Fraction(class_number(disc))


def hurwitz_class_number(n: int) -> Fraction:
    """H(n) = sum of h_w(-n/g^2) over g with -n/g^2 a discriminant."""
    if n <= 0:
        raise ValueError("Hurwitz class number needs n > 0")
    total = Fraction(0)
    g = 1
    while g * g <= n:
        if n % (g * g) == 0 and is_discriminant(-n // (g * g)):
            total += class_number_weighted(-n // (g * g))
        g += 1
    return total


def clear_cache() -> None:
    _reduced_triples.cache_clear()
