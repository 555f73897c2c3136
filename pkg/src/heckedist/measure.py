"""The p-adic Plancherel measures mu_p on [-2, 2], their products and Weyl limits.

mu_p has density (p+1)/pi * sqrt(1 - x^2/4) / ((p^1/2 + p^-1/2)^2 - x^2) and
tends to the Sato-Tate measure mu_inf = sqrt(4 - x^2) / (2 pi) dx as p grows.
In angle coordinates x = 2 cos(theta) the densities are smooth on [0, pi],
which is where all quadrature happens.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Tuple

from scipy import integrate

from .arith import is_prime
from .trace import DomainError

QUAD_EPSABS = 1e-13
QUAD_LIMIT = 1000


@dataclass(frozen=True)
class MeasureSpec:
    """mu_p for a prime p; ``p=None`` stands for the Sato-Tate limit mu_inf."""

    p: Optional[int] = None

    def __post_init__(self):
        if self.p is not None and not is_prime(self.p):
            raise DomainError("not_prime", f"{self.p} is not prime")

    @classmethod
    def of(cls, p) -> "MeasureSpec":
        if isinstance(p, MeasureSpec):
            return p
        if p is None or p == math.inf or (isinstance(p, str) and p.lower() in ("inf", "infinity")):
            return cls(None)
        return cls(int(p))

    @property
    def is_limit(self) -> bool:
        return self.p is None


def density(spec, x: float) -> float:
    spec = MeasureSpec.of(spec)
    if abs(x) > 2:
        raise DomainError("outside_support", f"x = {x} lies outside [-2, 2]")
    if spec.is_limit:
        return math.sqrt(4 - x * x) / (2 * math.pi)
    p = spec.p
    return (p + 1) / math.pi * math.sqrt(1 - x * x / 4) / (p + 2 + 1 / p - x * x)


def angle_density(spec, theta: float) -> float:
    """Density of theta in [0, pi] when x = 2 cos(theta) is mu_p distributed."""
    spec = MeasureSpec.of(spec)
    s2 = math.sin(theta) ** 2
    if spec.is_limit:
        return 2 / math.pi * s2
    p = spec.p
    return 2 * (p + 1) / math.pi * s2 / (p + 2 + 1 / p - 4 * math.cos(theta) ** 2)


def unit_angle_density(p: int, x: float) -> float:
    """Density of x = theta / (2 pi) on [0, 1/2]."""
    c2 = math.cos(2 * math.pi * x) ** 2
    return 4 * (p + 1) * (1 - c2) / (p + 2 + 1 / p - 4 * c2)


def unit_angle_density_sup(p: int) -> float:
    # (1-u)/(A-4u) decreases in u = cos^2 since A = (p+1)^2/p > 4: max at u = 0
    return 4 * p / (p + 1)


def _angle(x: float) -> float:
    return math.acos(max(-1.0, min(1.0, x / 2)))


def cdf(spec, a: float, b: float) -> float:
    """mu([a, b]) by adaptive quadrature in theta, absolute error well below 1e-10."""
    spec = MeasureSpec.of(spec)
    if not (-2 <= a <= 2 and -2 <= b <= 2):
        raise DomainError("outside_support", f"[{a}, {b}] is not inside [-2, 2]")
    if a > b:
        raise DomainError("reversed_interval", f"a = {a} > b = {b}")
    if a == b:
        return 0.0
    lo, hi = _angle(b), _angle(a)
    val, _ = integrate.quad(
        lambda t: angle_density(spec, t), lo, hi, epsabs=QUAD_EPSABS, epsrel=0, limit=QUAD_LIMIT
    )
    return min(1.0, max(0.0, val))


def integrate_against(spec, f, a: float = -2.0, b: float = 2.0) -> float:
    """Integral of f(x) d mu over [a, b], computed in the angle variable."""
    spec = MeasureSpec.of(spec)
    lo, hi = _angle(b), _angle(a)
    val, _ = integrate.quad(
        lambda t: f(2 * math.cos(t)) * angle_density(spec, t),
        lo,
        hi,
        epsabs=QUAD_EPSABS,
        epsrel=0,
        limit=QUAD_LIMIT,
    )
    return val


@dataclass(frozen=True)
class WeylLimit:
    """Limit of the average of cos(m theta): 1, 0 (odd m) or (p^-m/2 - p^-(m-2)/2) / 2."""

    m: int
    p: int
    value: Fraction


def weyl_limit(p: int, m: int) -> WeylLimit:
    if m < 0:
        raise ValueError(f"m must be >= 0, got {m}")
    if m == 0:
        value = Fraction(1)
    elif m % 2:
        value = Fraction(0)
    else:
        value = (Fraction(1, p ** (m // 2)) - Fraction(1, p ** (m // 2 - 1))) / 2
    return WeylLimit(m, p, value)


def chebyshev_moment_of_measure(p: int, m: int) -> Fraction:
    """Integral of X_m against mu_p: p^(-m/2) for even m, 0 for odd m."""
    if m < 0:
        raise ValueError(f"m must be >= 0, got {m}")
    return Fraction(0) if m % 2 else Fraction(1, p ** (m // 2))


def joint_weyl_limit(primes: Sequence[int], exponents: Sequence[int]) -> Fraction:
    if len(primes) != len(exponents):
        raise ValueError("need one exponent per prime")
    if len(set(primes)) != len(primes):
        raise DomainError("repeated_prime", f"primes must be distinct: {list(primes)}")
    return math.prod((weyl_limit(p, m).value for p, m in zip(primes, exponents)), start=Fraction(1))


@dataclass(frozen=True)
class JointBox:
    """Closed box prod [alpha_i, beta_i] inside [-2, 2]^r."""

    intervals: Tuple[Tuple[float, float], ...]

    def __post_init__(self):
        if not self.intervals:
            raise DomainError("bad_box", "box needs at least one axis")
        for a, b in self.intervals:
            if not (-2 <= a <= b <= 2):
                raise DomainError("bad_box", f"interval [{a}, {b}] is not an ordered sub-interval of [-2, 2]")

    @classmethod
    def from_flat(cls, endpoints: Sequence[float]) -> "JointBox":
        if len(endpoints) % 2 or not endpoints:
            raise DomainError("bad_box", "box needs an even, nonzero number of endpoints")
        it = iter(float(e) for e in endpoints)
        return cls(tuple(zip(it, it)))

    @classmethod
    def full(cls, r: int) -> "JointBox":
        return cls(((-2.0, 2.0),) * r)

    @property
    def dim(self) -> int:
        return len(self.intervals)

    def contains(self, point: Sequence[float]) -> bool:
        return all(a <= x <= b for x, (a, b) in zip(point, self.intervals))

    def reflected(self) -> "JointBox":
        return JointBox(tuple((-b, -a) for a, b in self.intervals))

    def angle_widths(self) -> Tuple[float, ...]:
        """Widths of the box after x = 2 cos(2 pi u), u in [0, 1/2]."""
        return tuple((_angle(a) - _angle(b)) / (2 * math.pi) for a, b in self.intervals)


def box_measure(box: JointBox, primes: Sequence) -> float:
    if box.dim != len(primes):
        raise DomainError("dimension_mismatch", f"box has {box.dim} axes, got {len(primes)} primes")
    return math.prod(cdf(p, a, b) for p, (a, b) in zip(primes, box.intervals))
