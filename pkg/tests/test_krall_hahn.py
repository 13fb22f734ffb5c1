from fractions import Fraction

import pytest

from krall.classical import DegenerateParameter
from krall.exact import Poly
from krall.krall_hahn import (
    KrallHahnFamily,
    deleted_hahn_masses,
    deleted_mass_quartet,
    hahn_orthogonality_check,
    mirror_check,
    nu_hahn,
    phi,
    proportional,
    psi,
    theta,
    xi,
)
from krall.sets import NotRepresentable, QuartetSpec


def test_scalar_helpers():
    assert theta(1, 0) == 2
    assert psi(1, 3, Fraction(5)) == 1
    assert phi(4, 1, 2, Fraction(7)) == 1
    for h in (1, 2, 3, 4):
        assert xi(h, 5, 0, -2, 3, 10) == 1
    assert xi(3, 5, 2, -2, 3, 10) == 6
    # h=4 is h=3 with a replaced by b and the sign (-1)^j
    assert xi(4, 5, 2, 7, -2, 10) == xi(3, 5, 2, -2, 7, 10)
    assert xi(4, 5, 3, 7, -2, 10) == -xi(3, 5, 3, -2, 7, 10)


def test_psi_counts_factors():
    x = Poly.x()
    assert psi(3, 0, x).degree == 3  # 1 + 2 factors


def test_deleted_quartets():
    q = deleted_mass_quartet((0,), 1, 1, 8)
    assert (q.a_hat, q.F2, q.F4, q.F1, q.F3) == (-1, (1,), (0,), (), ())
    q = deleted_mass_quartet((2,), 1, 1, 8)
    assert (q.a_hat, q.F2, q.F4) == (-3, (1, 2, 3), (2,))


@pytest.mark.parametrize(
    "A,c,d,N,B",
    [((0,), 1, 1, 8, ()), ((2,), 1, 1, 8, ()), ((0,), 2, Fraction(1, 2), 9, ()), ((1,), 1, 2, 10, (2,)), ((0,), 1, 1, 12, (0,))],
)
def test_deleted_mass_families(A, c, d, N, B):
    q = deleted_mass_quartet(A, c, d, N, B)
    assert proportional(deleted_hahn_masses(A, c, d, N, B), list(nu_hahn(q).table)) is not None
    fam = KrallHahnFamily(q)
    assert fam.hypothesis_ok()
    g = hahn_orthogonality_check(fam)
    assert g.ok and g.positive
    assert len(g.indices) == fam.top + 1


def test_two_sided_minimal_instance():
    q = QuartetSpec((1, 2), (1, 2), (1,), (1,), -2, -2, 10)
    g = hahn_orthogonality_check(KrallHahnFamily(q))
    assert g.ok


def test_mirror_symmetry():
    q = deleted_mass_quartet((2,), 1, Fraction(3, 2), 8)
    assert mirror_check(q)
    swapped = QuartetSpec(q.F2, q.F1, q.F4, q.F3, q.b_hat, q.a_hat, q.N)
    # the reflected family is orthogonal for the reflected measure
    g = hahn_orthogonality_check(KrallHahnFamily(swapped))
    assert g.ok


def test_degree_drops_exactly_where_omega_vanishes():
    fam = KrallHahnFamily(deleted_mass_quartet((2,), 1, 1, 8))
    for n in range(fam.top + 2):
        assert (fam.poly(n).degree == n) == (fam.omega(n) != 0)


def test_scope_guards():
    with pytest.raises(NotRepresentable):
        KrallHahnFamily(QuartetSpec((), (), (), (1,), 1, 1, 8))
    with pytest.raises(NotRepresentable):
        KrallHahnFamily(QuartetSpec((), (1,), (), (5,), -1, 1, 8))
    with pytest.raises(NotRepresentable):
        nu_hahn(QuartetSpec((), (), (), (2,), -2, 1, 8))
