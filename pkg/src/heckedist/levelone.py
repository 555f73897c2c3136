"""Ground-truth Hecke eigenvalues on S_k(SL_2(Z)) from exact q-expansions.

The Victor Miller basis of S_k is built from E4, E6 and Delta; Hecke matrices
act on it through the coefficient formula, and eigenvalues come from the exact
integer characteristic polynomial via Sturm-sequence isolation.  Nothing here
calls the trace formula, which is what makes it usable as an oracle for it.
"""
from __future__ import annotations

import csv
import io
import math
import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Dict, List, Sequence, Tuple

from . import polyroots
from .arith import divisors, is_prime, sigma

EIGEN_TOL = 1e-12
MAX_DRAWS = 16


class PrecisionError(ValueError):
    """A q-expansion was asked for a coefficient beyond its known precision."""


@dataclass(frozen=True)
class QSeries:
    """Truncated q-expansion ``sum_{i < precision} coeffs[i] q^i``."""

    coeffs: Tuple[int, ...]

    @property
    def precision(self) -> int:
        return len(self.coeffs)

    def __getitem__(self, i: int) -> int:
        if i >= self.precision:
            raise PrecisionError(f"coefficient q^{i} requested, precision is {self.precision}")
        return self.coeffs[i]

    def __mul__(self, other: "QSeries") -> "QSeries":
        prec = min(self.precision, other.precision)
        a, b = self.coeffs, other.coeffs
        out = [0] * prec
        for i in range(prec):
            if a[i]:
                ai = a[i]
                for j in range(prec - i):
                    out[i + j] += ai * b[j]
        return QSeries(tuple(out))

    def __sub__(self, other: "QSeries") -> "QSeries":
        prec = min(self.precision, other.precision)
        return QSeries(tuple(self.coeffs[i] - other.coeffs[i] for i in range(prec)))

    def scale(self, c: int) -> "QSeries":
        return QSeries(tuple(c * x for x in self.coeffs))

    def __pow__(self, e: int) -> "QSeries":
        result = QSeries((1,) + (0,) * (self.precision - 1))
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result


def eisenstein(weight: int, precision: int) -> QSeries:
    """E4 or E6 normalized with constant term 1."""
    const = {4: 240, 6: -504}[weight]
    return QSeries((1,) + tuple(const * sigma(n, weight - 1) for n in range(1, precision)))


def delta_series(precision: int) -> QSeries:
    """Delta = q prod (1 - q^m)^24, expanded from Euler's pentagonal series."""
    eta = [0] * precision
    j = 0
    while True:
        placed = False
        for g in ((j * (3 * j - 1)) // 2, (j * (3 * j + 1)) // 2):
            if g < precision:
                eta[g] = (-1) ** j
                placed = True
        if not placed:
            break
        j += 1
    prod24 = QSeries(tuple(eta)) ** 24
    return QSeries((0,) + prod24.coeffs[: precision - 1])


def cusp_dimension(k: int) -> int:
    """dim S_k(SL_2(Z)) from the classical formula."""
    if k % 2 or k < 4:
        return 0
    d = k // 12
    return d - 1 if k % 12 == 2 else d


@lru_cache(maxsize=64)
def victor_miller_basis(k: int, precision: int) -> Tuple[QSeries, ...]:
    """Cusp forms f_1..f_d of weight k with a_i(f_j) = delta_ij for 1 <= i <= d.

    >>> victor_miller_basis(12, 5)[0].coeffs
    (0, 1, -24, 252, -1472)
    """
    if k % 2:
        raise ValueError(f"weight must be even, got {k}")
    d = cusp_dimension(k)
    if d == 0:
        return ()
    if precision <= d:
        raise PrecisionError(f"precision {precision} cannot hold the identity block of size {d}")
    E4, E6, D = eisenstein(4, precision), eisenstein(6, precision), delta_series(precision)
    rows = []
    for j in range(1, d + 1):
        rest = k - 12 * j
        b = 0 if rest % 4 == 0 else 1
        a = (rest - 6 * b) // 4
        rows.append(D**j * E4**a * E6**b)
    # rows[j-1] starts at q^j with coefficient 1; clear the block above the diagonal
    for i in range(d - 1, -1, -1):
        for j in range(i + 1, d):
            c = rows[i][j + 1]
            if c:
                rows[i] = rows[i] - rows[j].scale(c)
    return tuple(rows)


@dataclass(frozen=True)
class HeckeMatrix:
    """Matrix of T_n on the Victor Miller basis: column j holds T_n f_j."""

    weight: int
    n: int
    entries: Tuple[Tuple[int, ...], ...]

    @property
    def size(self) -> int:
        return len(self.entries)

    def trace(self) -> int:
        return sum(self.entries[i][i] for i in range(self.size))

    def charpoly(self) -> List[int]:
        return polyroots.charpoly(self.entries)

    def __matmul__(self, other: "HeckeMatrix") -> List[List[int]]:
        return matmul(self.entries, other.entries)


def matmul(A, B) -> List[List[int]]:
    n, m = len(A), len(B[0]) if B else 0
    return [[sum(A[i][l] * B[l][j] for l in range(len(B))) for j in range(m)] for i in range(n)]


def required_precision(k: int, n: int) -> int:
    return n * cusp_dimension(k) + 1


def hecke_matrix(k: int, n: int, basis: Sequence[QSeries] = None) -> HeckeMatrix:
    """T_n on S_k(1) using a(T_n f)(m) = sum_{d | (m, n)} d^(k-1) a_f(m n / d^2)."""
    d = cusp_dimension(k)
    if basis is None:
        basis = victor_miller_basis(k, 2 * required_precision(k, n))
    if len(basis) != d:
        raise ValueError(f"basis has {len(basis)} forms, dim S_{k} is {d}")
    if d and basis[0].precision < required_precision(k, n):
        raise PrecisionError(
            f"T_{n} on weight {k} needs precision {required_precision(k, n)}, "
            f"basis has {basis[0].precision}"
        )
    cols = []
    for f in basis:
        col = []
        for m in range(1, d + 1):
            col.append(
                sum(e ** (k - 1) * f[m * n // (e * e)] for e in divisors(math.gcd(m, n)))
            )
        cols.append(col)
    entries = tuple(tuple(cols[j][i] for j in range(d)) for i in range(d))
    return HeckeMatrix(k, n, entries)


@dataclass
class EigenTable:
    """Joint normalized eigenvalues of T_{p_1}, ..., T_{p_r} on S_k(1)."""

    weight: int
    primes: Tuple[int, ...]
    rows: List[Tuple[float, ...]]
    angles: List[Tuple[float, ...]]
    seed: int = 0
    combination: Tuple[int, ...] = ()
    level: int = 1

    @property
    def size(self) -> int:
        return len(self.rows)

    def column(self, axis: int) -> List[float]:
        return [row[axis] for row in self.rows]

    def to_dict(self) -> Dict:
        return {
            "weight": self.weight,
            "level": self.level,
            "primes": list(self.primes),
            "seed": self.seed,
            "combination": list(self.combination),
            "rows": [
                {"eigenvalues": list(r), "angles": list(a)}
                for r, a in zip(self.rows, self.angles)
            ],
        }

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(
            ["weight", "row"]
            + [f"a_{p}" for p in self.primes]
            + [f"theta_{p}" for p in self.primes]
        )
        for i, (r, a) in enumerate(zip(self.rows, self.angles)):
            w.writerow([self.weight, i] + [repr(x) for x in r] + [repr(x) for x in a])
        return buf.getvalue()


def _solve(A: List[List[Fraction]], b: List[Fraction]) -> List[Fraction]:
    n = len(A)
    M = [list(map(Fraction, row)) + [Fraction(v)] for row, v in zip(A, b)]
    for col in range(n):
        piv = next((r for r in range(col, n) if M[r][col] != 0), None)
        if piv is None:
            raise ZeroDivisionError("singular system")
        M[col], M[piv] = M[piv], M[col]
        inv = 1 / M[col][col]
        M[col] = [x * inv for x in M[col]]
        for r in range(n):
            if r != col and M[r][col] != 0:
                f = M[r][col]
                M[r] = [x - f * y for x, y in zip(M[r], M[col])]
    return [M[i][n] for i in range(n)]


def _polynomial_in(C: List[List[int]], T: List[List[int]], rng: random.Random) -> List[Fraction]:
    """Coefficients q with q(C) = T, for C with distinct eigenvalues commuting with T."""
    d = len(C)
    for attempt in range(8):
        v = [1] + [0] * (d - 1) if attempt == 0 else [rng.randint(-9, 9) for _ in range(d)]
        krylov = [v]
        for _ in range(d - 1):
            krylov.append([sum(C[i][j] * krylov[-1][j] for j in range(d)) for i in range(d)])
        K = [[krylov[j][i] for j in range(d)] for i in range(d)]
        Tv = [sum(T[i][j] * v[j] for j in range(d)) for i in range(d)]
        try:
            return _solve(K, Tv)
        except ZeroDivisionError:
            continue
    raise ArithmeticError("no cyclic vector found")


def _bracket_mid(br):
    return (br[0] + br[1]) / 2


def _eigen_brackets(entries, k: int, p: int):
    """Distinct eigenvalues of an integer T_p matrix, bracketed to EIGEN_TOL after normalization."""
    chi = polyroots.charpoly(entries)
    width = Fraction(EIGEN_TOL / 10) * _scale_fraction(p, k)
    brackets = polyroots.real_roots(chi, width)
    if sum(polyroots.root_multiplicities(chi, brackets)) != len(entries):
        raise ArithmeticError(f"T_{p} in weight {k} has non-real eigenvalues")
    return chi, brackets


def _scale_fraction(p: int, k: int) -> Fraction:
    # a rational lower bound on p^((k-1)/2), good enough to size brackets
    return Fraction(p ** ((k - 2) // 2))


def normalize(value: Fraction, p: int, k: int) -> float:
    return float(value) / p ** ((k - 1) / 2)


def eigen_table(k: int, primes: Sequence[int], seed: int = 0) -> EigenTable:
    """Joint eigenvalue tuples (a(p_1), ..., a(p_r)) on S_k(1), counted with multiplicity."""
    primes = tuple(int(p) for p in primes)
    if not primes:
        raise ValueError("need at least one prime")
    if len(set(primes)) != len(primes):
        raise ValueError(f"primes must be distinct, got {primes}")
    for p in primes:
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
    d = cusp_dimension(k)
    if d == 0:
        raise ValueError(f"S_{k}(1) is zero")
    basis = victor_miller_basis(k, 2 * required_precision(k, max(primes)))
    mats = [hecke_matrix(k, p, basis).entries for p in primes]
    per_prime = [_eigen_brackets(m, k, p) for m, p in zip(mats, primes)]

    rng = random.Random(seed)
    if len(primes) == 1:
        chi, brackets = per_prime[0]
        mults = polyroots.root_multiplicities(chi, brackets)
        values = [[_bracket_mid(b)] for b, m in zip(brackets, mults) for _ in range(m)]
        return _finish(k, primes, values, seed, (1,))

    for _ in range(MAX_DRAWS):
        combo = tuple(rng.randint(1, 1000) for _ in primes)
        C = [[sum(c * m[i][j] for c, m in zip(combo, mats)) for j in range(d)] for i in range(d)]
        chi_c = polyroots.charpoly(C)
        if polyroots.degree(polyroots.gcd_poly(chi_c, polyroots.derivative(chi_c))) > 0:
            continue
        polys = [_polynomial_in(C, m, rng) for m in mats]
        values = _joint_values(chi_c, polys, per_prime)
        return _finish(k, primes, values, seed, combo)
    raise ArithmeticError(
        f"no combination of T_p for p in {primes} with distinct eigenvalues after {MAX_DRAWS} draws"
    )


def _joint_values(chi_c, polys, per_prime):
    lam_brackets = polyroots.isolate_roots(chi_c)
    sq = polyroots.squarefree_part(chi_c)
    rows = []
    for lo, hi in lam_brackets:
        width = (hi - lo) or Fraction(1)
        row = None
        for _ in range(12):
            width /= 2**32
            lo, hi = polyroots.refine_root(sq, lo, hi, width)
            row = _snap(polys, per_prime, lo, hi)
            if row is not None:
                break
        if row is None:
            raise ArithmeticError("could not resolve joint eigenvalue to a single root")
        rows.append(row)
    return rows


def _snap(polys, per_prime, lo, hi):
    # the image of [lo, hi] under each q_j must single out one eigenvalue of T_{p_j}
    row = []
    for q, (_, brackets) in zip(polys, per_prime):
        a, b = polyroots.evaluate(q, lo), polyroots.evaluate(q, hi)
        y_lo, y_hi = min(a, b), max(a, b)
        mids = [_bracket_mid(br) for br in brackets]
        near = min(range(len(mids)), key=lambda i: abs(mids[i] - (y_lo + y_hi) / 2))
        gap = min((abs(mids[near] - m) for i, m in enumerate(mids) if i != near), default=None)
        spread = (y_hi - y_lo) + abs(mids[near] - (y_lo + y_hi) / 2)
        if gap is not None and spread * 4 >= gap:
            return None
        row.append(mids[near])
    return row


def _finish(k, primes, values, seed, combo) -> EigenTable:
    rows, angles = [], []
    for vals in values:
        a = tuple(normalize(v, p, k) for v, p in zip(vals, primes))
        if any(abs(x) > 2 + 1e-9 for x in a):
            raise ArithmeticError(f"eigenvalue outside [-2, 2] in weight {k}: {a}")
        rows.append(a)
        angles.append(tuple(math.acos(max(-1.0, min(1.0, x / 2))) for x in a))
    order = sorted(range(len(rows)), key=lambda i: rows[i])
    return EigenTable(
        weight=k,
        primes=primes,
        rows=[rows[i] for i in order],
        angles=[angles[i] for i in order],
        seed=seed,
        combination=tuple(combo),
    )
