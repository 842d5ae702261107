import dataclasses

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from denniston.errors import (
    ContainsIdentity,
    EvenPrimeUnsupported,
    NonIntegralCharacterSum,
    NotInSubfield,
    NotPrime,
    NotVerified,
    ParamInconsistency,
    RangeError,
    SizeMismatch,
)
from denniston.finite_field import build_tower
from denniston.pds import (
    GroupElem,
    GroupSet,
    PdsParams,
    construct_D,
    denniston_params,
    dual_params,
    dual_set,
    nls_params,
    x_params,
)
from denniston.quadform import construct_X_quadform
from denniston.verify import char_sum, character_spectrum, verify_pds
from oracles import pds_check_naive


@pytest.mark.parametrize("args,want", [
    ((3, 2, 1), (729, 168, 27, 42)),
    ((3, 3, 1), (19683, 1482, 81, 114)),
    ((3, 3, 2), (19683, 5850, 1593, 1800)),
    ((5, 2, 1), (15625, 2520, 335, 420)),
    ((7, 2, 1), (117649, 14448, 1547, 1806)),
])
def test_denniston_params(args, want):
    P = denniston_params(*args)
    assert P.as_tuple() == want
    assert P.is_consistent()


def test_denniston_thetas():
    P = denniston_params(3, 2, 1)
    assert (P.theta_pos, P.theta_neg) == (6, -21)
    assert P.delta == 27**2
    P = denniston_params(3, 3, 1)
    assert (P.theta_pos, P.theta_neg) == (24, -57)


def test_denniston_param_errors():
    with pytest.raises(RangeError):
        denniston_params(3, 2, 2)
    with pytest.raises(RangeError):
        denniston_params(3, 2, 0)
    with pytest.raises(RangeError):
        denniston_params(3, 1, 1)
    with pytest.raises(NotPrime):
        denniston_params(9, 2, 1)
    with pytest.raises(EvenPrimeUnsupported):
        denniston_params(2, 3, 1)


def test_params_frozen_and_str():
    P = denniston_params(3, 2, 1)
    with pytest.raises(dataclasses.FrozenInstanceError):
        P.k = 1
    assert str(P) == "v=729 k=168 lambda=27 mu=42"
    assert tuple(P) == (729, 168, 27, 42)


def test_params_consistency():
    assert not PdsParams(729, 168, 27, 43).is_consistent()
    with pytest.raises(ParamInconsistency):
        PdsParams(729, 168, 27, 43).check()


@pytest.mark.parametrize("p,m,want", [(3, 2, (81, 20, 1, 6)), (3, 3, (729, 224, 61, 72)),
                                      (5, 2, (625, 104, 3, 20)), (7, 2, (2401, 300, 5, 42))])
def test_x_params(p, m, want):
    assert x_params(p, m).as_tuple() == want
    assert nls_params(p**m, p ** (m - 1) - 1).as_tuple() == want


def test_x_params_thetas():
    P = x_params(3, 2)
    assert (P.theta_pos, P.theta_neg) == (2, -7)


@pytest.mark.parametrize("p,m", [(3, 2), (3, 3), (5, 2), (3, 4), (5, 3), (7, 3)])
def test_dual_params_is_partner(p, m):
    for r in range(1, m):
        P = denniston_params(p, m, r)
        assert dual_params(P) == denniston_params(p, m, m - r)
        assert dual_params(dual_params(P)) == P


def test_dual_params_pos_variant():
    P = denniston_params(3, 2, 1)
    Q = dual_params(P, eigenvalue="pos")
    assert Q.as_tuple() == (729, 560, 433, 420)
    assert Q.k + dual_params(P).k == P.v - 1


def test_dual_params_errors():
    P = denniston_params(3, 2, 1)
    with pytest.raises(ParamInconsistency):
        dual_params(P, v=728)
    with pytest.raises(ValueError):
        dual_params(P, eigenvalue="zero")


def test_group_elem(t32):
    w = t32.omega
    g = GroupElem(w, t32.alpha)
    assert GroupElem.from_index(t32, g.index) == g
    assert g - g == GroupElem(t32.zero, t32.zero)
    assert (g + g).index == GroupElem(w + w, t32.alpha + t32.alpha).index
    assert g.label() == [[0, 1], [0, 1, 0, 0]]
    with pytest.raises(NotInSubfield):
        GroupElem(t32.alpha, t32.one)


def test_group_index_is_lexicographic(t32):
    labels = [GroupElem.from_index(t32, i).label() for i in range(0, 729)]
    assert labels == sorted(labels)


@pytest.mark.parametrize("p,m,k", [(3, 2, 168), (5, 2, 2520), (7, 2, 14448), (3, 3, 1482)])
def test_construct_D_shape(p, m, k):
    T = build_tower(p, m)
    D = construct_D(T)
    assert len(D) == k
    assert D.indices[0] != 0
    s, _ = D.split()
    assert np.all(s != 0)
    assert D.with_indices(D.indices) == D


def test_D_symmetric(tower):
    D = construct_D(tower)
    neg = GroupSet.from_pairs(tower, [-g for g in D])
    assert neg == D


def test_D_certified_naively(t32):
    D = construct_D(t32)
    universe = [GroupElem.from_index(t32, i) for i in range(729)]
    assert pds_check_naive(list(D), universe, 27, 42)


@pytest.mark.parametrize("p,m", [(3, 2), (5, 2), (3, 3)])
def test_D_certified(p, m):
    D = construct_D(build_tower(p, m))
    assert verify_pds(D, denniston_params(p, m, 1)).passed


def test_D_character_cases(t32, t52):
    for T in (t32, t52):
        p, pm = T.p, T.sub_order
        D = construct_D(T)
        P = denniston_params(p, T.m, 1)
        values, integral = character_spectrum(D)
        assert integral.all()
        q = T.q
        sub = np.arange(len(values)) // q
        big = np.arange(len(values)) % q
        assert values[0] == len(D)
        assert np.all(values[(sub == 0) & (big != 0)] == pm - p)
        assert np.all(values[(sub != 0) & (big == 0)] == -((p - 1) * (pm + 1) + 1))
        rest = values[(sub != 0) & (big != 0)]
        assert set(np.unique(rest).tolist()) <= {P.theta_pos, P.theta_neg}


def test_char_sum_pairs(t32):
    D = construct_D(t32)
    assert char_sum(D, (t32.zero, t32.one)).reduce() == 6
    assert char_sum(D, (t32.one, t32.zero)).reduce() == -21


@pytest.mark.parametrize("p,m,size", [(3, 2, 168), (3, 3, 5850)])
def test_dual_set(p, m, size):
    T = build_tower(p, m)
    D = construct_D(T)
    P = denniston_params(p, m, 1)
    Dstar = dual_set(D, P)
    Pstar = dual_params(P)
    assert len(Dstar) == size == Pstar.k
    assert verify_pds(Dstar, Pstar, "brute").passed
    assert dual_set(Dstar, Pstar) == D


def test_dual_set_pos_variant(t32):
    D = construct_D(t32)
    P = denniston_params(3, 2, 1)
    S = dual_set(D, P, eigenvalue="pos")
    assert len(S) == 560
    assert verify_pds(S, dual_params(P, eigenvalue="pos")).passed


def test_dual_of_X(t32):
    X = construct_X_quadform(t32)
    P = x_params(3, 2)
    Xs = dual_set(X, P)
    Ps = dual_params(P)
    assert len(Xs) == Ps.k
    assert verify_pds(Xs, Ps).passed


def test_dual_set_refuses(t32):
    D = construct_D(t32)
    P = denniston_params(3, 2, 1)
    with pytest.raises(SizeMismatch):
        dual_set(D.with_indices(D.indices[1:]), P)
    with pytest.raises(ContainsIdentity):
        dual_set(D.with_indices(np.concatenate([[0], D.indices[1:]])), P)
    # swap one element for an outsider: the set is no longer a PDS
    bad = D.indices.copy()
    bad[0] = next(i for i in range(1, 729) if i not in set(D.indices.tolist()))
    with pytest.raises((NotVerified, NonIntegralCharacterSum)):
        dual_set(D.with_indices(bad), P)
    with pytest.raises(ValueError):
        dual_set(D, P, eigenvalue="x")


def test_dual_set_nonintegral(t32):
    # a set of size 168 with no symmetry has nonintegral sums
    idx = np.arange(1, 169)
    with pytest.raises(NonIntegralCharacterSum):
        dual_set(GroupSet(t32, idx), denniston_params(3, 2, 1))


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 728), st.integers(0, 728))
def test_group_law(i, j):
    T = build_tower(3, 2)
    g, h = GroupElem.from_index(T, i), GroupElem.from_index(T, j)
    assert (g + h) - h == g
    assert g + h == h + g
    assert GroupElem.from_index(T, (g + h).index) == g + h
