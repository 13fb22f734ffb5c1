from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from krall.classical import meixner
from krall.exact import Poly
from krall.krall_meixner import KrallMeixnerFamily
from krall.operators import (
    BandedDifferenceOperator,
    apply_operator,
    eigencheck_operator,
    eigenvalue_fit_degree,
    find_operator,
    search_ladder,
    search_operator,
)
from krall.sets import PairSpec

X = Poly.x()
A, C = Fraction(1, 2), Fraction(3)
MEIXNER = [meixner(n, A, C) for n in range(8)]


def test_meixner_operator_oracle():
    # a(x+c) p(x+1) - (x + a(x+c)) p(x) + x p(x-1) = n(a-1) p
    up = (X + C) * A
    L = BandedDifferenceOperator(1, {1: up, 0: -(X + up), -1: X})
    chk = eigencheck_operator(L, MEIXNER)
    assert chk.ok
    assert chk.eigenvalues == [n * (A - 1) for n in range(8)]


def test_meixner_solution_space_is_identity_plus_one():
    basis = find_operator(MEIXNER, 1, 1)
    assert len(basis) == 2
    rep = search_operator(MEIXNER, 1, 1)
    assert rep.nontrivial and rep.out_of_sample_ok
    assert eigencheck_operator(rep.operator, MEIXNER).ok
    assert eigenvalue_fit_degree(rep.eigenvalues) == 1


def test_krall_meixner_operator_at_predicted_radius():
    fam = KrallMeixnerFamily(PairSpec((1,), (1,), Fraction(1, 2), -1))
    polys = [fam.poly(n) for n in range(11)]
    assert fam.r == 3
    rep = search_ladder(polys, 3, range(1, 9))
    assert rep.nontrivial and rep.out_of_sample_ok and rep.extra == 2
    assert rep.operator.effective_radius == 3
    assert eigencheck_operator(rep.operator, polys).ok
    only_identity = search_operator(polys, 1, 6)
    assert not only_identity.nontrivial and only_identity.dimension == 1


def test_identity_and_zero():
    I = BandedDifferenceOperator.identity(2)
    p = Poly([3, -1, 2])
    assert apply_operator(I, p) == p
    assert I.is_identity_multiple() and not I.is_zero()
    Z = BandedDifferenceOperator(1, {})
    assert Z.is_zero() and Z.effective_radius == 0
    assert apply_operator(Z, p).is_zero()


def test_json_round_trip():
    L = BandedDifferenceOperator(1, {1: X + Fraction(1, 3), -1: X})
    assert BandedDifferenceOperator.from_json(L.to_json()) == L


def test_bad_inputs():
    with pytest.raises(ValueError):
        find_operator([Poly([1, 1]), Poly([1])], 1, 1)
    with pytest.raises(ValueError):
        search_operator(MEIXNER[:2], 1, 1, extra=2)


def test_eigenvalue_fit_degree():
    assert eigenvalue_fit_degree([n * n for n in range(6)]) == 2
    assert eigenvalue_fit_degree([0] * 5) == -1


monic_family = st.lists(
    st.lists(st.integers(-5, 5), min_size=5, max_size=5), min_size=6, max_size=6
)


@settings(max_examples=25)
@given(monic_family)
def test_every_solution_is_an_eigen_operator(rows):
    polys = [Poly([Fraction(c) for c in row[:n]] + [1]) for n, row in enumerate(rows)]
    basis = find_operator(polys, 1, 1)
    assert basis  # the identity always solves the system
    for L in basis:
        assert eigencheck_operator(L, polys).ok


def test_unstructured_family_has_only_the_identity():
    polys = [Poly([1]), Poly([2, 1]), Poly([-1, 3, 1]), Poly([4, 0, -2, 1]), Poly([1, 1, 5, -3, 1]), Poly([0, 2, -1, 1, 4, 1])]
    rep = search_operator(polys, 1, 2, extra=1)
    assert rep.dimension == 1 and not rep.nontrivial
