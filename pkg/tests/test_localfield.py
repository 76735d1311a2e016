from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given
from hypothesis import strategies as st

from gspin_cover_kit.localfield import (
    ONE,
    PI,
    REAL,
    U,
    CharacterValue,
    FieldElement,
    FieldError,
    LocalField,
    SquareClassCharacter,
    apply_character,
    gauss_sum_mu4,
    hilbert_oracle,
    legendre,
    mu4_parse,
)

from strategies import field_elements, unit_classes

PRIMES = [3, 5, 7]


def test_parse_round_trip():
    x = FieldElement.parse("-2:1")
    assert (x.v, x.c) == (-2, 1)
    assert FieldElement.parse(x.token()) == x


@pytest.mark.parametrize("bad", ["x", "1", "1:2", "a:b", "1:0:0", ""])
def test_parse_rejects_malformed(bad):
    with pytest.raises(FieldError):
        FieldElement.parse(bad)


def test_field_configuration():
    F = LocalField(3)
    assert F.nonresidue == 2 and F.gamma_pi == 1
    assert LocalField(5).gamma_pi == 0
    assert LocalField(7).nonresidue == 3
    with pytest.raises(FieldError):
        LocalField(4)
    with pytest.raises(FieldError):
        LocalField(5, nonresidue=4)
    # gamma(pi)^2 must be (pi, pi): for p=3 that is -1, so kappa = 1 is rejected
    with pytest.raises(FieldError):
        LocalField(3, gamma_pi=0)
    assert LocalField(3, gamma_pi=3).gamma_pi == 3


def test_gauss_sum_snaps_to_mu4():
    assert gauss_sum_mu4(5) == 0 and gauss_sum_mu4(13) == 0
    assert gauss_sum_mu4(3) == 1 and gauss_sum_mu4(7) == 1


def test_from_rational():
    F = LocalField(3)
    assert F.from_rational(9) == FieldElement(2, 0)
    assert F.from_rational(Fraction(2, 3)) == FieldElement(-1, 1)
    assert F.from_rational(-1) == U
    with pytest.raises(FieldError):
        F.from_rational(0)
    R = LocalField(REAL)
    assert R.from_rational(Fraction(-5, 7)) == FieldElement(0, 1)


# -- Hilbert symbol -----------------------------------------------------------


@pytest.mark.parametrize("p", [3, 5, 7])
def test_squares_in_kernel(p):
    F = LocalField(p)
    for x, y in product(F.elements((-1, 0, 1, 2)), repeat=2):
        assert F.hilbert(x * x, y) == 1


def test_documented_values():
    assert LocalField(3).hilbert(PI, PI) == -1
    assert LocalField(REAL).hilbert(U, U) == -1
    assert LocalField(3).hilbert(PI, U) == -1


@pytest.mark.parametrize("p", PRIMES)
def test_hilbert_matches_conic_oracle(p):
    F = LocalField(p)
    for x, y in product(F.square_classes(), repeat=2):
        assert F.hilbert(x, y) == hilbert_oracle(F, x, y), (x, y)


def test_real_rule_matches_oracle():
    R = LocalField(REAL)
    for x, y in product(R.square_classes(), repeat=2):
        assert R.hilbert(x, y) == hilbert_oracle(R, x, y)


@pytest.mark.parametrize("p", PRIMES)
def test_bimultiplicative_exhaustive(p):
    F = LocalField(p)
    els = F.elements((-1, 0, 1))
    for x, y, z in product(els, repeat=3):
        assert F.hilbert(x * y, z) == F.hilbert(x, z) * F.hilbert(y, z)


@pytest.mark.parametrize("p", PRIMES)
def test_symmetric_and_norm_identity(p):
    F = LocalField(p)
    minus_one = F.from_rational(-1)
    for x in F.elements((-1, 0, 1)):
        assert F.hilbert(x, minus_one * x) == 1
        for y in F.elements((-1, 0, 1)):
            assert F.hilbert(x, y) == F.hilbert(y, x)


@given(st.sampled_from(PRIMES), unit_classes, unit_classes)
def test_units_pair_trivially(p, x, y):
    assert LocalField(p).hilbert(x, y) == 1


@given(st.sampled_from(PRIMES), field_elements, field_elements, field_elements)
def test_bimultiplicative_property(p, x, y, z):
    F = LocalField(p)
    assert F.hilbert(x, y * z) == F.hilbert(x, y) * F.hilbert(x, z)


# -- Weil factor ----------------------------------------------------------------


def _configs():
    for p in PRIMES:
        for k in range(4):
            try:
                yield LocalField(p, gamma_pi=k)
            except FieldError:
                continue


@pytest.mark.parametrize("F", list(_configs()), ids=str)
def test_weil_relations(F):
    els = F.elements((-2, -1, 0, 1, 2))
    for x in els:
        assert F.weil_factor(x * x) == 0
        assert F.weil_factor(x.inverse()) == F.weil_factor(x)
        for y in els:
            extra = 0 if F.hilbert(x, y) == 1 else 2
            assert F.weil_factor(x * y) == (F.weil_factor(x) + F.weil_factor(y) + extra) % 4


def test_weil_examples():
    F = LocalField(3, gamma_pi=1)
    assert F.weil_factor(U) == 0
    # gamma(3)^2 (3,3) = i^2 * (-1) = 1 = gamma(9)
    assert (2 * F.weil_factor(PI) + 2) % 4 == F.weil_factor(PI * PI) == 0
    with pytest.raises(FieldError):
        LocalField(REAL).weil_factor(ONE)


def test_exactly_two_valid_kappas():
    for p in PRIMES:
        assert len(list(k for k in range(4) if _ok(p, k))) == 2


def _ok(p, k):
    try:
        LocalField(p, gamma_pi=k)
        return True
    except FieldError:
        return False


# -- absolute value and characters ------------------------------------------------


def test_abs_value():
    F = LocalField(5)
    assert F.abs_value(U).is_one()
    assert F.abs_value(PI) == CharacterValue(q_exp=-1)
    assert F.abs_value(PI ** -2) == CharacterValue(q_exp=2)


def test_character_examples():
    assert apply_character(SquareClassCharacter.trivial(), FieldElement(3, 1)).is_one()
    eta = SquareClassCharacter()
    assert eta(PI ** 3) == CharacterValue(z_exp=3)
    eta_u = SquareClassCharacter(on_u=-1)
    assert eta_u(U * PI) == CharacterValue(zeta=2, z_exp=1)


@given(field_elements, field_elements, st.sampled_from([1, -1]))
def test_character_multiplicative(x, y, s):
    eta = SquareClassCharacter(CharacterValue(zeta=1, z_exp=1), s)
    assert eta(x * y) == eta(x) * eta(y)


def test_character_value_arithmetic():
    v = CharacterValue(q_exp=Fraction(3), zeta=1, z_exp=2)
    assert (v * v.inverse()).is_one()
    assert CharacterValue(q_exp=4) ** Fraction(1, 2) == CharacterValue(q_exp=2)
    with pytest.raises(ValueError):
        v ** Fraction(1, 2)
    assert str(CharacterValue(q_exp=-1, zeta=2)) == "-1*q^-1"


def test_legendre_and_mu4():
    assert legendre(2, 3) == -1 and legendre(4, 7) == 1
    assert mu4_parse("-i") == 3
    with pytest.raises(FieldError):
        mu4_parse("2")
