from fractions import Fraction

import pytest

from krall.exact import Poly
from krall.exceptional_meixner import (
    ExcMeixnerFamily,
    IndexNotInSigma,
    bounded_gram,
    lambda_det,
    reduction_identity_check,
)
from krall.sets import PairSpec

HALF = Fraction(1, 2)
FAMILIES = [
    PairSpec((1,), (1,), HALF, -1),
    PairSpec((), (), HALF, 3),
    PairSpec((2,), (), HALF, 2),
    PairSpec((1, 3), (2,), Fraction(1, 3), Fraction(5, 2)),
    PairSpec((1, 3), (2,), HALF, -2),
]


@pytest.mark.parametrize("spec", FAMILIES, ids=lambda s: f"{s.F1}-{s.F2}-{s.c_hat}")
def test_identities_on_sigma(spec):
    fam = ExcMeixnerFamily(spec)
    for n in fam.sigma(fam.u + 8):
        p = fam.poly(n)
        assert p == fam.poly_alt(n)
        assert p.degree == n and p.lc == fam.leading_coefficient(n)
        assert fam.eigen_ok(n)


def test_index_outside_sigma():
    fam = ExcMeixnerFamily(FAMILIES[0])
    with pytest.raises(IndexNotInSigma):
        fam.poly(2)
    with pytest.raises(IndexNotInSigma):
        fam.poly(0)


def test_no_sets_gives_classical_meixner():
    from krall.classical import meixner

    fam = ExcMeixnerFamily(PairSpec((), (), HALF, 3))
    assert fam.omega == Poly.const(1)
    assert fam.poly(4) == meixner(4, HALF, 3)
    assert lambda_det((), (), HALF, 3).is_zero()


def test_bounded_gram_with_adaptive_truncation():
    fam = ExcMeixnerFamily(FAMILIES[0])
    checks = bounded_gram(fam, 6)
    assert all(c.ok for c in checks)
    assert max(c.tail.bound for c in checks) < Fraction(1, 10**20)


def test_reduction_of_zero_entries():
    rep = reduction_identity_check(PairSpec((0, 1, 3), (2,), HALF, -1), count=4)
    assert rep.ok
