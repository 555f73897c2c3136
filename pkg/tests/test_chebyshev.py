import math
from fractions import Fraction

import mpmath
import pytest

from heckedist.arith import Surd
from heckedist.chebyshev import (
    JointMomentRequest,
    chebyshev,
    cosine_moment_sum,
    cosine_poly,
    joint_cosine_product,
    matrix_polynomial,
    moment_vector,
    weyl_sum_from_eigenvalues,
)
from heckedist.levelone import (
    cusp_dimension,
    eigen_table,
    hecke_matrix,
    required_precision,
    victor_miller_basis,
)
from heckedist.trace import DomainError
from oracles import tau


def test_chebyshev_examples():
    assert chebyshev(0).coeffs == (1,)
    assert chebyshev(2).coeffs == (-1, 0, 1)
    x = 2 * math.cos(math.pi / 7)
    assert chebyshev(5)(x) * math.sin(math.pi / 7) == pytest.approx(math.sin(6 * math.pi / 7), abs=1e-12)


def test_cosine_poly_identity():
    mpmath.mp.dps = 60
    thetas = [mpmath.pi * (i + 0.5) / 100 for i in range(100)]
    for m in range(0, 51):
        coeffs = cosine_poly(m)
        if m >= 2:
            hi, lo = chebyshev(m).coeffs, chebyshev(m - 2).coeffs + (0, 0)
            assert coeffs == tuple(a - b for a, b in zip(hi, lo))
        for t in thetas:
            x = 2 * mpmath.cos(t)
            val = mpmath.fsum(c * x**i for i, c in enumerate(coeffs))
            assert abs(val - 2 * mpmath.cos(m * t)) < 1e-30


def test_cosine_moment_examples():
    assert float(cosine_moment_sum(2, 1, 1, 12)) == pytest.approx(-0.530330, abs=1e-6)
    assert cosine_moment_sum(2, 2, 1, 12) == Surd(Fraction(tau(4), 2**11)) - 1
    assert float(cosine_moment_sum(2, 2, 1, 12)) == -1.71875
    a2 = float(cosine_moment_sum(2, 1, 1, 12))
    assert a2 * a2 - 2 == pytest.approx(-1.71875, abs=1e-12)


def test_moment_vector_examples():
    assert moment_vector(2, 1, 12, 0).floats() == [1]
    assert moment_vector(2, 1, 12, 2).entries == [Surd(1), Surd.normalized_trace(-24, 2, 12), Surd.normalized_trace(-1472, 4, 12)]
    assert moment_vector(2, 11, 2, 1).floats() == pytest.approx([1, -2 / math.sqrt(2)])


def test_joint_examples():
    # On S_12(1) the joint sums are products of the single eigenvalues.
    a2, a3 = tau(2) / 2**5.5, tau(3) / 3**5.5
    v = joint_cosine_product(JointMomentRequest((2, 3), (1, 1), 1, 12))
    assert float(v) == pytest.approx(a2 * a3, abs=1e-12)
    assert float(v) == pytest.approx(-0.317526, abs=1e-6)
    v = joint_cosine_product(JointMomentRequest((2, 3), (2, 2), 1, 12))
    assert float(v) == pytest.approx((a2**2 - 2) * (a3**2 - 2), abs=1e-12)
    assert float(v) == pytest.approx(2.821359, abs=1e-6)


def test_joint_rejects_repeated_primes():
    with pytest.raises(DomainError):
        JointMomentRequest((2, 2), (1, 1), 1, 12)


def test_operator_identity_on_matrices():
    # p^(m(k-1)/2) X_m(T_p / p^((k-1)/2)) = sum_j c_j p^((m-j)(k-1)/2) T_p^j is an integer
    # polynomial in T_p (only j = m mod 2 occur), so the identity is checked exactly.
    for k in (12, 24, 36):
        for p in (2, 3, 5):
            basis = victor_miller_basis(k, required_precision(k, p**4))
            tp = [list(r) for r in hecke_matrix(k, p, basis).entries]
            for m in range(0, 5):
                coeffs = [
                    c * p ** ((m - j) // 2 * (k - 1)) if c else 0
                    for j, c in enumerate(chebyshev(m).coeffs)
                ]
                lhs = matrix_polynomial(coeffs, tp)
                if m == 0:
                    rhs = [[int(i == j) for j in range(len(tp))] for i in range(len(tp))]
                else:
                    rhs = [list(r) for r in hecke_matrix(k, p**m, basis).entries]
                assert lhs == rhs, (k, p, m)


def test_trace_identity_via_eigenvalues():
    for k in (12, 24, 36):
        for p in (2, 3, 5):
            vals = eigen_table(k, [p]).column(0)
            mv = moment_vector(p, 1, k, 4).floats()
            for m in range(5):
                assert weyl_sum_from_eigenvalues(vals, m) == pytest.approx(mv[m], abs=1e-9)


def test_joint_matches_direct_eigen_sums():
    for k in range(12, 61, 2):
        if cusp_dimension(k) == 0:
            continue
        for primes in ((2,), (3,), (2, 3), (2, 5)):
            table = eigen_table(k, list(primes))
            for exps in ((1,) * len(primes), (2,) * len(primes), (3, 1)[: len(primes)], (1, 4)[: len(primes)]):
                direct = math.fsum(
                    math.prod(2 * math.cos(m * th) for m, th in zip(exps, ang)) for ang in table.angles
                )
                v = joint_cosine_product(JointMomentRequest(primes, exps, 1, k))
                assert float(v) == pytest.approx(direct, abs=1e-9)
