import pytest
from hypothesis import given, strategies as st

from krall.sets import (
    PairSpec,
    QuartetSpec,
    contains_lattice,
    downarrow,
    fset,
    hset,
    involution_I,
    normalize_pair,
    reconstruct,
    s_of,
    sigma_of,
    u_of,
    vandermonde,
)

posets = st.sets(st.integers(1, 12), max_size=6).map(fset)


def test_involution_examples():
    assert involution_I((1,)) == (1,)
    assert involution_I((2,)) == (1, 2)
    assert involution_I((1, 3)) == (1, 3)
    assert involution_I((1, 2, 3)) == (3,)
    assert involution_I(()) == ()


@given(posets)
def test_involution_is_involutive(F):
    G = involution_I(F)
    assert involution_I(G) == F
    if F:
        assert max(G) == max(F)
        assert len(G) == max(F) - len(F) + 1


@given(posets)
def test_reconstruct_inverts_downarrow(F):
    assert reconstruct(F) == F


def test_s_and_downarrow_examples():
    assert s_of((1, 2, 3)) == 4 and downarrow((1, 2, 3)) == ()
    assert s_of((2, 3)) == 1 and downarrow((2, 3)) == (1, 2)
    assert s_of((1, 3)) == 2 and downarrow((1, 3)) == (1,)


def test_vandermonde():
    assert vandermonde((1, 2, 4)) == 1 * 3 * 2
    assert vandermonde(()) == 1


def test_hset_and_lattice():
    assert hset(1, (1,), (1,)) == ()
    assert contains_lattice(1, (1,), (1,))
    assert not contains_lattice(1, (2,), (2,))


def test_u_and_sigma():
    assert u_of((1,), (1,)) == 1
    assert sigma_of((1,), (1,), 6) == [1, 3, 4, 5, 6]


@given(posets, posets, st.integers(0, 20))
def test_sigma_has_one_gap_per_F1_element(F1, F2, extra):
    u = u_of(F1, F2)
    top = u + max(F1 + (0,)) + extra
    assert len(sigma_of(F1, F2, top)) == top - u + 1 - len(F1)


def test_pair_properties():
    p = PairSpec((1,), (1,), "1/2", -1)
    assert (p.k1, p.k2, p.k, p.u) == (1, 1, 2, 1)
    assert p.satisfies_hf2() and p.is_canonical()
    assert p.H == ()
    assert p.to_json() == {"a": "1/2", "c_hat": "-1", "F1": [1], "F2": [1]}


def test_negative_entries_rejected():
    with pytest.raises(ValueError):
        PairSpec((-1,), (), "1/2", -1)
    with pytest.raises(ValueError):
        QuartetSpec((), (), (), (), -1, 1, 0)


def test_normalize_pair_yields_canonical_pair():
    np_ = normalize_pair(PairSpec((0, 1, 3), (2,), "1/2", 0))
    assert np_.spec.is_canonical() or np_.kind == "christoffel"
    assert np_.steps
