from fractions import Fraction
from math import factorial

import pytest
from hypothesis import given, strategies as st

from krall.classical import (
    DegenerateParameter,
    HahnParams,
    MeixnerParams,
    dual_hahn,
    hahn,
    hahn_measure,
    laguerre,
    meixner,
    meixner_laguerre_errors,
    meixner_measure,
    meixner_norm,
    meixner_packing_check,
)
from krall.exact import Poly, binom_scalar, pochhammer
from krall.measures import inner_product_exact

X = Poly.x()
HALF = Fraction(1, 2)


def brute_meixner(n, a, c, x):
    # hypergeometric form: (a/(a-1))^n (c)_n 2F1(-n,-x;c;1-1/a) / n!, scaled to our normalization
    total = Fraction(0)
    for j in range(n + 1):
        total += binom_scalar(x, j) * binom_scalar(-x - c, n - j) * Fraction(a) ** -j
    return (Fraction(a) / (1 - a)) ** n * total


def test_meixner_small_cases():
    assert meixner(0, HALF, 3) == Poly.const(1)
    assert meixner(1, HALF, 3) == X - 3
    assert meixner(-1, HALF, 3).is_zero()
    assert meixner_norm(1, HALF, 3) == 6


@given(st.integers(0, 6), st.integers(0, 10))
def test_meixner_matches_direct_sum(n, x):
    assert meixner(n, Fraction(1, 3), Fraction(5, 2))(x) == brute_meixner(n, Fraction(1, 3), Fraction(5, 2), x)


def test_meixner_three_term_shape():
    # monic up to the factor: leading coefficient is 1/n! in this normalization
    for n in range(6):
        assert meixner(n, HALF, 3).lc == Fraction(1, factorial(n))


def test_meixner_orthogonality_exact():
    mu = meixner_measure(MeixnerParams(HALF, 3))
    base = inner_product_exact(mu, Poly.const(1), Poly.const(1))
    for n in range(6):
        for m in range(6):
            v = inner_product_exact(mu, meixner(n, HALF, 3), meixner(m, HALF, 3))
            assert v == (meixner_norm(n, HALF, 3) * base if n == m else 0)


def test_meixner_orthogonality_non_integer_c_partial_sums():
    mu = meixner_measure(MeixnerParams(HALF, Fraction(3, 2)))
    p, q = meixner(1, HALF, Fraction(3, 2)), meixner(2, HALF, Fraction(3, 2))
    partial = sum(mu.mass(x) * p(x) * q(x) for x in range(200))
    assert abs(partial) < Fraction(1, 10**40)


def test_packing_identity():
    for c in (0, -1, -2):
        for n in range(1 - c, 6 - c):
            assert meixner_packing_check(n, HALF, c)


def test_degenerate_parameters():
    with pytest.raises(DegenerateParameter):
        MeixnerParams(1, 3)
    with pytest.raises(DegenerateParameter):
        meixner_norm(2, HALF, -1)


def test_laguerre_values():
    assert laguerre(1, -2) == -X - 1
    assert laguerre(2, 0) == Poly([1, -2, Fraction(1, 2)])


@given(st.integers(0, 6), st.fractions(min_value=-3, max_value=3, max_denominator=4))
def test_laguerre_derivative_lowers_index(n, alpha):
    # d/dx L_n^alpha = -L_{n-1}^{alpha+1}
    assert laguerre(n, alpha).derivative() == -laguerre(n - 1, alpha + 1)


def test_hahn_degree_one_root():
    # the degree-one member vanishes at the mean of the Hahn distribution, N(a+1)/(a+b+2)
    p = hahn(1, HahnParams(1, 2, 5))
    assert p.degree == 1
    assert p(Fraction(5 * 2, 5)) == 0


@pytest.mark.parametrize("a,b,N", [(1, 2, 5), (0, 0, 6), (Fraction(1, 2), 3, 4)])
def test_hahn_orthogonality_on_finite_table(a, b, N):
    p = HahnParams(a, b, N)
    mu = hahn_measure(p)
    polys = [hahn(n, p) for n in range(N + 1)]
    for i in range(N + 1):
        for j in range(i + 1, N + 1):
            assert inner_product_exact(mu, polys[i], polys[j]) == 0
        assert inner_product_exact(mu, polys[i], polys[i]) > 0


def test_dual_hahn_duality_value():
    # R_n(lambda(x)) and Q_x(n) share values; check R_n(0) against the Pochhammer constant
    p = HahnParams(1, 2, 5)
    for n in range(4):
        assert dual_hahn(n, p)(0) == pochhammer(-5, n) * pochhammer(2, n)


def test_meixner_to_laguerre_limit_halves_error():
    for n in range(1, 5):
        errs = meixner_laguerre_errors(n, 3)
        ratios = [errs[i] / errs[i - 1] for i in range(1, len(errs))]
        assert all(Fraction(2, 5) <= r <= Fraction(3, 5) for r in ratios[-6:])
    assert all(e == 0 for e in meixner_laguerre_errors(0, 3))
