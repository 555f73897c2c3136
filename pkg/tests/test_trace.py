import math
from fractions import Fraction

import pytest

from heckedist.arith import is_prime
from heckedist.chebyshev import normalized_trace
from heckedist.trace import (
    DomainError,
    TraceRequest,
    congruence_count,
    dimension,
    mu_weight,
    prop_p1_bound,
    term_a1,
    term_a2,
    term_a2_full,
    term_a3,
    trace,
    trace_value,
)
from oracles import GENUS_ONE_CURVES, curve_ap, gamma0_dimension, tau


def test_congruence_count_examples():
    assert congruence_count(5, 7, 1) == 1
    assert congruence_count(0, 1, 2) == 1
    assert congruence_count(1, 1, 3) == 1


def test_congruence_count_crt_route():
    K = 1009 * 1013
    brute = sum(1 for x in range(K) if (x * x - 3 * x + 5) % K == 0)
    assert congruence_count(3, 5, K) == brute


def test_mu_weight_examples():
    assert mu_weight(4, 3, 5, 1) == 1
    # x = 3, 8 solve x^2 + 2 = 0 mod 11
    assert mu_weight(0, 1, 2, 11) == sum(1 for x in range(11) if (x * x + 2) % 11 == 0) == 2
    assert mu_weight(1, 1, 1, 2) == 0


def test_term_examples():
    assert term_a1(TraceRequest(2, 1, 12)) == 0
    assert term_a2(TraceRequest(2, 1, 12)) == -23
    assert term_a3(TraceRequest(1, 1, 12)) == Fraction(-1, 2)


def test_breakdown_identity_level_one_weight_twelve():
    bd = trace(TraceRequest(1, 1, 12))
    assert (bd.a1, bd.a2, bd.a3, bd.a4, bd.total) == (Fraction(11, 12), Fraction(7, 12), Fraction(-1, 2), 0, 1)


def test_small_level_examples():
    assert trace(TraceRequest(2, 1, 12)).total == -24
    assert trace(TraceRequest(2, 11, 2)).total == -2
    assert dimension(1, 12) == 1
    assert dimension(1, 14) == 0
    assert dimension(11, 2) == 1


@pytest.mark.parametrize(
    "args, reason",
    [
        ((2, 2, 12), "n_not_coprime_to_level"),
        ((1, 1, 3), "odd_or_small_weight"),
        ((1, 1, 0), "odd_or_small_weight"),
        ((0, 1, 12), "bad_index"),
        ((1, 0, 12), "bad_level"),
    ],
)
def test_domain_errors(args, reason):
    with pytest.raises(DomainError) as info:
        TraceRequest(*args)
    assert info.value.reason == reason


def test_tau_agreement():
    for n in range(1, 40):
        assert trace_value(n, 1, 12) == tau(n)


def test_dimension_matches_classical_formula():
    for N in range(1, 31):
        for k in range(2, 31, 2):
            assert dimension(N, k) == gamma0_dimension(N, k), (N, k)


@pytest.mark.parametrize("N", sorted(GENUS_ONE_CURVES))
def test_weight_two_genus_one_levels_match_curves(N):
    assert dimension(N, 2) == 1
    for p in range(2, 60):
        if is_prime(p) and N % p:
            assert trace_value(p, N, 2) == curve_ap(GENUS_ONE_CURVES[N], p), (N, p)


def test_integrality_grid():
    # trace() itself raises TraceIntegralityError on a fractional total
    for N in range(1, 31):
        for k in range(2, 31, 2):
            for n in range(1, 51):
                if math.gcd(n, N) == 1:
                    assert isinstance(trace_value(n, N, k), int)


def test_a2_half_sum_matches_full_sum():
    for N in (1, 2, 3, 7, 12):
        for k in (2, 4, 12, 20):
            for n in range(1, 30):
                if math.gcd(n, N) == 1:
                    req = TraceRequest(n, N, k)
                    assert term_a2(req) == term_a2_full(req)


@pytest.mark.parametrize("k", [12, 16, 18, 20, 22, 26])
def test_hecke_recursions_on_one_dimensional_spaces(k):
    lam = lambda n: trace_value(n, 1, k)
    for p in (2, 3, 5, 7):
        assert lam(p * p) == lam(p) ** 2 - p ** (k - 1)
    for m, n in ((2, 3), (3, 5), (4, 9), (5, 7), (8, 3)):
        assert lam(m * n) == lam(m) * lam(n)


def test_deligne_bound_on_traces():
    for N in range(1, 31):
        for k in range(2, 31, 2):
            d = dimension(N, k)
            for p in (2, 3, 5, 7, 11, 13):
                if N % p:
                    assert abs(trace_value(p, N, k)) <= d * 2 * p ** ((k - 1) / 2) + 1e-6


def test_p1_bound_examples():
    assert math.isclose(prop_p1_bound([1], [2], 1), 2**1.5 * math.log(8))
    assert math.isclose(prop_p1_bound([2], [2], 1), 8 * 2 * math.log(16))
    assert math.isclose(prop_p1_bound([1, 1], [2, 3], 1), 6**1.5 * math.log(24))
    with pytest.raises(ValueError):
        prop_p1_bound([1, 1], [2, 2], 1)


def test_p1_bound_holds_with_constant_sixteen():
    worst = 0.0
    for p in (2, 3, 5, 7):
        for m in range(1, 7):
            for N in range(1, 21):
                if N % p == 0:
                    continue
                bound = prop_p1_bound([m], [p], N)
                for k in range(2, 41, 2):
                    worst = max(worst, abs(float(normalized_trace(p**m, N, k))) / bound)
    assert worst <= 16
