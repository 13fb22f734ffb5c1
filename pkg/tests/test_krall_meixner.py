from fractions import Fraction

import pytest

from krall.exact import Poly
from krall.krall_meixner import (
    KrallMeixnerFamily,
    admissible_meixner,
    band_radius,
    limit_experiment,
    meixner_pair_catalog,
    norm_law_check,
    normalization_mismatches,
    nu_mass,
    omega_degree,
    omega_meixner,
    orthogonality_defects,
    removed_points_pair,
)
from krall.sets import NotRepresentable, PairSpec

X = Poly.x()
SPEC = PairSpec((1,), (1,), Fraction(1, 2), -1)


def test_omega_of_the_basic_pair():
    fam = KrallMeixnerFamily(SPEC)
    assert fam.c == 3
    # hand expansion: rows (x+1, x+2) and (x-2, 2(x-1)) give 2(x^2-1) - (x^2-4)
    assert fam.omega == X * X + 2
    assert fam.omega.degree == omega_degree((1,), (1,))


def test_band_radius():
    assert band_radius((1,), (1,)) == 3
    assert KrallMeixnerFamily(SPEC).r == 3


def test_orthogonality_and_norm_law():
    fam = KrallMeixnerFamily(SPEC)
    assert orthogonality_defects(fam, 8) == []
    rep = norm_law_check(fam, 8)
    assert rep.constant and rep.ok
    assert rep.C_F == 8


def test_degrees_equal_index():
    fam = KrallMeixnerFamily(SPEC)
    assert [fam.poly(n).degree for n in range(9)] == list(range(9))


def test_nu_masses_vanish_on_F1():
    assert nu_mass(SPEC, 1) == 0
    assert nu_mass(SPEC, 0) > 0


def test_containment_is_required():
    with pytest.raises(NotRepresentable):
        KrallMeixnerFamily(PairSpec((2,), (2,), Fraction(1, 2), -1))


@pytest.mark.parametrize("spec", meixner_pair_catalog(), ids=lambda s: f"{s.F1}-{s.F2}-{s.c_hat}")
def test_admissibility_criteria_agree(spec):
    rep = admissible_meixner(spec)
    assert rep.agree


def test_catalog_has_negative_instances():
    flags = [admissible_meixner(s).admissible for s in meixner_pair_catalog()]
    assert len(flags) >= 10 and flags.count(False) >= 2


@pytest.mark.parametrize(
    "F1,F2,c",
    [((0, 1, 3), (2,), 0), ((2,), (0, 1), 0), ((0, 1, 3), (2,), -1), ((1,), (0, 2), -2), ((0, 2), (0, 1), 0)],
)
def test_normalization_identities(F1, F2, c):
    assert normalization_mismatches(PairSpec(F1, F2, Fraction(1, 2), c), 50) == []


@pytest.mark.parametrize("d,A", [(2, (0,)), (3, (0, 2))])
def test_removed_points_give_expected_H(d, A):
    spec = removed_points_pair(A, d)
    assert spec.H == tuple(range(-d + 1, 0))


def test_limit_masses_converge_linearly():
    rep = limit_experiment(SPEC, steps=12, x_max=20)
    assert rep.ratios_within(0.4, 0.6, last=6)
    assert all(rep.positive)
