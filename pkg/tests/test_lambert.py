from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from rankcrank.lambert import (
    InvalidSpecializationError,
    Specialization,
    chan_lhs,
    jackson_sides,
    lambert_term,
    pole_factors,
    random_specialization,
    validate,
    verify_chan,
    verify_jackson,
    verify_lewis,
    verify_watson,
    watson_sides,
)

F = Fraction


def test_lambert_term_expansions():
    assert lambert_term(2, 0, 3).coeffs == (-1, 0, 0, 0)
    assert lambert_term(2, 1, 3).coeffs == (1, 2, 4, 8)
    assert lambert_term(2, -1, 3).coeffs == (0, F(-1, 2), F(-1, 4), F(-1, 8))
    assert lambert_term(3, 2, 5).coeffs == (1, 0, 3, 0, 9, 0)
    with pytest.raises(InvalidSpecializationError):
        lambert_term(1, 0, 3)


@pytest.mark.parametrize("z, zeta", [(2, 3), (F(1, 2), F(1, 3))])
def test_watson_fixed_points(z, zeta):
    assert verify_watson(Specialization(z, (zeta,)), 30)


@pytest.mark.parametrize("z, zeta", [(2, 3), (3, 2)])
def test_lewis_fixed_points(z, zeta):
    assert verify_lewis(Specialization(z, (zeta,)), 30)


def test_jackson_fixed_point_and_x_independence():
    c = verify_jackson(Specialization(2, (3, 5)), 25, x_alt=7)
    assert c and [s.name for s in c.sub] == ["jackson", "jackson_x_independence"]


def test_chan_fixed_point():
    assert verify_chan(3, Specialization(2, (3, 5, 7), seed=1), 20)


@pytest.mark.parametrize("seed", range(5))
def test_seeded_watson_and_lewis(seed):
    assert verify_watson(random_specialization("watson", 1, seed), 20)
    assert verify_lewis(random_specialization("lewis", 1, seed), 20)


@pytest.mark.parametrize("m", [1, 2, 4, 5])
def test_seeded_chan(m):
    assert verify_chan(m, random_specialization("chan", m, 100 + m), 12)


def test_random_specializations_are_reproducible():
    assert random_specialization("chan", 3, 7) == random_specialization("chan", 3, 7)
    s = random_specialization("jackson", 2, 3)
    for v in (s.z, *s.aux):
        assert abs(v.numerator) <= 13 and v.denominator <= 13


@given(st.integers(0, 10_000))
def test_chan_one_is_watson(seed):
    s = random_specialization("watson", 1, seed)
    assert chan_lhs(s.z, s.aux, 10) == watson_sides(s, 10)[0]


@given(st.integers(0, 10_000))
def test_chan_two_is_jackson(seed):
    s = random_specialization("jackson", 2, seed)
    assert chan_lhs(s.z, s.aux, 10) == jackson_sides(s, 10)[0]


@given(st.integers(0, 10_000), st.integers(1, 4))
def test_pole_collision_is_rejected(seed, m):
    s = random_specialization("chan", m, seed)
    with pytest.raises(InvalidSpecializationError):
        validate("chan", Specialization(s.aux[0], s.aux))
    with pytest.raises(InvalidSpecializationError):
        verify_chan(m, Specialization(1 / s.aux[-1], s.aux), 5)


@pytest.mark.parametrize(
    "identity, aux, bad",
    [("watson", (F(1),), "zeta"), ("lewis", (F(2),), "z/zeta"), ("jackson", (F(3), F(-1)), "x^2"),
     ("jackson", (F(3), F(1, 2)), "z*x"), ("chan", (F(3), F(5), F(1, 5)), "x2*x3")],
)
def test_named_pole_factors(identity, aux, bad):
    with pytest.raises(InvalidSpecializationError) as info:
        validate(identity, Specialization(2, aux))
    assert info.value.factor == bad


def test_pole_lists_agree_across_equivalent_identities():
    s1 = Specialization(F(2, 3), (F(5, 7),))
    s2 = Specialization(F(2, 3), (F(5, 7), F(-3, 4)))
    values = lambda name, s: sorted(v for _, v in pole_factors(name, s))
    assert values("chan", s1) == values("watson", s1)
    assert values("chan", s2) == values("jackson", s2)


def test_numerator_only_vanishing_is_allowed():
    # [zeta^2] sits only in numerators, so zeta = -1 is a valid point
    assert verify_watson(Specialization(2, (F(-1),)), 15)
    assert verify_chan(2, Specialization(2, (F(-1), F(3))), 12, alt=Specialization(2, (F(-1), F(5))))


def test_zero_values_rejected():
    with pytest.raises(InvalidSpecializationError):
        Specialization(0, (F(2),))


def test_chan_alternate_must_keep_x1():
    s = Specialization(2, (3, 5, 7))
    with pytest.raises(ValueError):
        verify_chan(3, s, 5, alt=Specialization(2, (4, 5, 7)))
