from fractions import Fraction

import numpy as np
from hypothesis import given, settings, strategies as st

from heckedist.polyroots import (
    charpoly,
    gcd_poly,
    isolate_roots,
    mul,
    real_roots,
    root_bound,
    root_multiplicities,
    squarefree_factorization,
)


def from_roots(roots):
    p = [1]
    for r in roots:
        p = mul(p, [-r, 1])
    return p


def test_charpoly_examples():
    assert charpoly([[0, 1], [20468736, 1080]]) == [-20468736, -1080, 1]
    assert charpoly([[2, 0, 0], [0, 3, 0], [0, 0, 5]]) == from_roots([2, 3, 5])


@settings(max_examples=60, deadline=None)
@given(st.lists(st.integers(-50, 50), min_size=9, max_size=9))
def test_charpoly_against_numpy(entries):
    A = [entries[0:3], entries[3:6], entries[6:9]]
    expected = np.poly(np.array(A, dtype=float))[::-1]
    assert np.allclose(charpoly(A), expected, rtol=1e-9, atol=1e-6)


@settings(max_examples=80, deadline=None)
@given(st.lists(st.integers(-30, 30), min_size=1, max_size=7))
def test_isolates_integer_roots(roots):
    p = from_roots(roots)
    brackets = real_roots(p, Fraction(1, 1000))
    distinct = sorted(set(roots))
    assert len(brackets) == len(distinct)
    for (lo, hi), r in zip(brackets, distinct):
        assert lo <= r <= hi
    counts = [roots.count(r) for r in distinct]
    assert root_multiplicities(p, brackets) == counts
    assert all(abs(r) < root_bound(p) for r in roots)


def test_irrational_roots_are_bracketed():
    # x^2 - 1080x - 20468736 has roots 540 +- 12 sqrt(144169)
    brackets = real_roots([-20468736, -1080, 1], Fraction(1, 10**9))
    exact = [540 - 12 * 144169**0.5, 540 + 12 * 144169**0.5]
    for (lo, hi), r in zip(brackets, exact):
        assert float(lo) - 1e-6 <= r <= float(hi) + 1e-6
        assert hi - lo <= Fraction(1, 10**9)


def test_no_real_roots():
    assert isolate_roots([1, 0, 1]) == []


def test_squarefree_factorization():
    p = mul(mul(from_roots([1]), from_roots([2, 2])), from_roots([3, 3, 3]))
    factors = squarefree_factorization(p)
    assert factors == [[-1, 1], [-2, 1], [-3, 1]]
    assert gcd_poly(from_roots([1, 2]), from_roots([2, 5])) == [-2, 1]
