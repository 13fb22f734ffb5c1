from fractions import Fraction
from itertools import permutations

import pytest
from hypothesis import given, strategies as st

from krall.exact import (
    Poly,
    RatFunc,
    binom_scalar,
    det_leibniz,
    det_scalar,
    expand_first_row,
    format_rational,
    frac,
    nullspace,
    pochhammer,
    poly_gcd,
    polymat_det,
    primitive_vector,
    rising_poly,
)

X = Poly.x()
small = st.fractions(min_value=-5, max_value=5, max_denominator=6)
polys = st.lists(small, min_size=0, max_size=5).map(Poly)
nonzero_polys = polys.filter(lambda p: not p.is_zero())


def test_frac_parses_strings_and_rejects_floats():
    assert frac("3/4") == Fraction(3, 4)
    assert frac(2) == 2
    with pytest.raises(TypeError):
        frac(0.5)


def test_format_rational():
    assert format_rational(Fraction(-3, 4)) == "-3/4"
    assert format_rational(5) == "5"


def test_pochhammer_and_binomial_small_values():
    assert pochhammer(3, 0) == 1
    assert pochhammer(2, 2) == 6
    assert pochhammer(-2, 3) == 0
    assert binom_scalar(Fraction(1, 2), 2) == Fraction(-1, 8)


def test_poly_basic_shape():
    assert Poly().degree == -1
    p = Poly([1, 0, 3])
    assert p.degree == 2 and p.lc == 3 and p(2) == 13
    assert str(X * X - 1) == "x^2 - 1"


@given(polys, polys, polys)
def test_ring_laws(p, q, r):
    assert (p + q) * r == p * r + q * r
    assert p * q == q * p
    assert (p - p).is_zero()


@given(polys, nonzero_polys)
def test_divmod_identity(p, q):
    quo, rem = p.divmod(q)
    assert quo * q + rem == p
    assert rem.degree < q.degree


@given(polys, small, small)
def test_shift_composes(p, s, t):
    assert p.shift(s).shift(t) == p.shift(s + t)
    assert p.shift(s) == p.compose(X + s)


@given(polys, small)
def test_shift_matches_evaluation(p, v):
    assert p.shift(3)(v) == p(v + 3)


@given(polys)
def test_derivative_product_rule(p):
    q = X * X + 2
    assert (p * q).derivative() == p.derivative() * q + p * q.derivative()


@given(nonzero_polys, nonzero_polys, nonzero_polys)
def test_gcd_recovers_common_factor(p, q, g):
    d = poly_gcd(p * g, q * g)
    assert ((p * g) % d).is_zero() and ((q * g) % d).is_zero()
    assert (d % g.monic()).is_zero()


@given(nonzero_polys, nonzero_polys, nonzero_polys)
def test_ratfunc_field_laws(p, q, r):
    a, b = RatFunc(p, q), RatFunc(q, r)
    assert (a * b) / b == a
    assert (a + b) - b == a
    assert RatFunc(p * r, q * r) == RatFunc(p, q)


def test_ratfunc_delta_and_call():
    f = RatFunc(Poly.const(1), X)
    assert f.delta() == RatFunc(Poly.const(-1), X * (X + 1))
    assert f(4) == Fraction(1, 4)
    with pytest.raises(ZeroDivisionError):
        f(0)


def test_rising_poly_values():
    assert rising_poly(X, 3)(2) == 2 * 3 * 4


mats = st.integers(1, 4).flatmap(lambda n: st.lists(st.lists(small, min_size=n, max_size=n), min_size=n, max_size=n))


@given(mats)
def test_scalar_det_matches_permutation_expansion(m):
    n = len(m)
    want = Fraction(0)
    for perm in permutations(range(n)):
        sign = 1
        for i in range(n):
            for j in range(i + 1, n):
                if perm[i] > perm[j]:
                    sign = -sign
        term = Fraction(sign)
        for i in range(n):
            term *= m[i][perm[i]]
        want += term
    assert det_scalar(m) == want


@given(st.integers(1, 6).flatmap(lambda n: st.lists(st.lists(polys, min_size=n, max_size=n), min_size=n, max_size=n)))
def test_polynomial_det_methods_agree(m):
    """Cofactor (n<5), Bareiss (n>=5) and Leibniz expansion give the same polynomial."""
    if len(m) <= 5:
        assert polymat_det(m) == det_leibniz(m)
    else:
        v = Fraction(3, 7)
        assert polymat_det(m)(v) == det_scalar([[e(v) for e in r] for r in m])


def test_expand_first_row_matches_full_det():
    first = [X, X * X, Poly.const(1)]
    rest = [[Fraction(1), Fraction(2), Fraction(3)], [Fraction(0), Fraction(1), Fraction(5)]]
    full = [first, [Poly.const(c) for c in rest[0]], [Poly.const(c) for c in rest[1]]]
    assert expand_first_row(first, rest) == polymat_det(full)


@given(st.lists(st.lists(st.integers(-3, 3), min_size=4, max_size=4), min_size=1, max_size=4))
def test_nullspace_vectors_are_solutions(rows):
    basis = nullspace([[Fraction(e) for e in r] for r in rows], 4)
    for v in basis:
        assert all(sum(Fraction(a) * b for a, b in zip(r, v)) == 0 for r in rows)
    # rank-nullity
    rank = 4 - len(basis)
    assert rank <= min(len(rows), 4)


def test_primitive_vector():
    assert primitive_vector([Fraction(-2, 3), Fraction(4, 3), Fraction(0)]) == [1, -2, 0]
