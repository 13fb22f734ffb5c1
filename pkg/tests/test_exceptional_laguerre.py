from fractions import Fraction

import pytest

from krall.classical import laguerre
from krall.exact import Poly, RatFunc, polymat_det
from krall.exceptional_laguerre import (
    ExcLaguerreFamily,
    leading_coefficient_limit_ok,
    limit_from_meixner,
    omega_laguerre,
    positivity_equivalence_check,
    quadrature_gram,
)
from krall.exceptional_meixner import IndexNotInSigma
from krall.krall_meixner import meixner_pair_catalog

X = Poly.x()
EXAMPLE = ExcLaguerreFamily((1,), (1,), -2)


def test_omega_examples():
    assert EXAMPLE.omega == -(X * X + 1)
    assert omega_laguerre((1,), (), -2) == -X - 1


def test_first_member_is_the_printed_3x3_determinant():
    rows = [
        [-X - 1, Poly.const(-1), Poly()],
        [X - 1, X, X + 1],
    ]
    first = [laguerre(0, -2), Poly(), Poly()]
    assert EXAMPLE.poly(1) == polymat_det([first] + rows)


def test_operator_coefficients_match_closed_forms():
    op = EXAMPLE.operator
    om = X * X + 1
    assert op.h1 == RatFunc(1 - X) - RatFunc(4 * X * X, om)
    assert op.h0 == RatFunc(Poly.const(-2)) + RatFunc(2 * X + 2 * X * X, om)


@pytest.mark.parametrize("n", [1, 3, 4, 5, 6, 7])
def test_eigen_relation(n):
    assert EXAMPLE.eigen_ok(n)
    assert EXAMPLE.poly(n).lc == EXAMPLE.leading_coefficient(n)


def test_no_sets_reduces_to_laguerre_operator():
    fam = ExcLaguerreFamily((), (), 3)
    assert fam.omega == Poly.const(1)
    assert fam.operator.h1 == RatFunc(Poly([4, -1]))
    assert all(fam.eigen_ok(n) for n in range(5))


def test_index_two_is_missing():
    with pytest.raises(IndexNotInSigma):
        EXAMPLE.poly(2)


def test_rromh():
    assert EXAMPLE.rromh_ok()


def test_quadrature_gram():
    g = quadrature_gram(EXAMPLE, [1, 3, 4])
    assert g.ok(1e-9)
    for n in (1, 3, 4):
        assert abs(g.values[(n, n)] - 1) < 1e-9


@pytest.mark.parametrize("spec", meixner_pair_catalog(), ids=lambda s: f"{s.F1}-{s.F2}-{s.c_hat}")
def test_positivity_equivalence_on_transported_catalog(spec):
    fam = ExcLaguerreFamily(spec.F1, spec.F2, spec.c_hat - 1)
    rep = positivity_equivalence_check(fam)
    assert rep.agree and rep.chain_ok


@pytest.mark.parametrize("n", [1, 3, 4])
def test_limit_from_meixner(n):
    table = limit_from_meixner(EXAMPLE, n)
    assert table.halving(0.4, 0.6, 6)
    assert leading_coefficient_limit_ok(EXAMPLE, n)
