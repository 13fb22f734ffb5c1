from fractions import Fraction

from hypothesis import given, strategies as st

from krall.exact import Poly
from krall.roots import count_real_roots, has_nonnegative_root, root_bound

roots_st = st.lists(st.fractions(min_value=-20, max_value=20, max_denominator=5), min_size=1, max_size=6)


@given(roots_st, st.integers(0, 2))
def test_counts_distinct_real_roots(roots, n_complex):
    p = Poly.from_roots(roots)
    for _ in range(n_complex):
        p = p * Poly([1, 0, 1])  # x^2 + 1 adds no real roots
    assert count_real_roots(p) == len(set(roots))


@given(roots_st, st.fractions(min_value=-20, max_value=20, max_denominator=3), st.fractions(min_value=0, max_value=10, max_denominator=3))
def test_counts_in_closed_intervals(roots, lo, width):
    hi = lo + width
    p = Poly.from_roots(roots)
    assert count_real_roots(p, lo, hi) == len({r for r in set(roots) if lo <= r <= hi})


@given(roots_st)
def test_root_bound_covers_roots(roots):
    p = Poly.from_roots(roots, lead=3)
    b = root_bound(p)
    assert all(abs(r) <= b for r in roots)


def test_nonnegative_root_examples():
    assert not has_nonnegative_root(Poly([1, 0, 1]))
    assert has_nonnegative_root(Poly([0, 1]))  # root exactly at 0
    assert not has_nonnegative_root(Poly([Fraction(1, 2), 1]))


def test_constant_polynomials():
    assert count_real_roots(Poly.const(5)) == 0
