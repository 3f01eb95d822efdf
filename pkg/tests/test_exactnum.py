from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from symtwistor.exactnum import G, GaussianRational, I, MINUS_I, ONE, ZERO


gaussians = st.builds(
    G,
    st.fractions(min_value=-50, max_value=50, max_denominator=12),
    st.fractions(min_value=-50, max_value=50, max_denominator=12),
)
nonzero_gaussians = gaussians.filter(lambda g: not g.is_zero())


def test_construction_coerces_ints_and_fractions():
    g = GaussianRational(2, Fraction(1, 3))
    assert g.re == Fraction(2) and g.im == Fraction(1, 3)
    assert GaussianRational.coerce(5) == G(5)
    assert GaussianRational.coerce(Fraction(3, 4)) == G(Fraction(3, 4))
    assert GaussianRational.coerce(g) is g


def test_immutable():
    g = G(1, 2)
    with pytest.raises(AttributeError):
        g.re = Fraction(9)


def test_basic_arithmetic():
    a = G(1, 2)
    b = G(3, -1)
    assert a + b == G(4, 1)
    assert a - b == G(-2, 3)
    assert a * b == G(5, 5)  # (1+2i)(3-i) = 3 - i + 6i + 2 = 5 + 5i
    assert -a == G(-1, -2)
    assert 2 + a == G(3, 2)
    assert 2 - a == G(1, -2)
    assert 3 * a == G(3, 6)


def test_i_squares_to_minus_one():
    assert I * I == G(-1)
    assert I**2 == -1
    assert I**3 == MINUS_I
    assert I**4 == ONE


def test_division_and_inverse():
    a = G(1, 1)
    assert a * a.inverse() == ONE
    assert a / a == ONE
    assert G(2) / 4 == Fraction(1, 2)
    assert 1 / I == MINUS_I
    assert G(5, 5) / G(3, -1) == G(1, 2)


def test_zero_division_raises():
    with pytest.raises(ZeroDivisionError):
        G(1) / ZERO
    with pytest.raises(ZeroDivisionError):
        ZERO.inverse()


def test_negative_power_uses_inverse():
    assert G(0, 2) ** -2 == G(Fraction(-1, 4))
    assert I**-1 == MINUS_I


def test_pow_rejects_non_int():
    with pytest.raises(TypeError):
        I ** Fraction(1, 2)


def test_equality_against_plain_numbers():
    assert G(3) == 3
    assert G(Fraction(1, 2)) == Fraction(1, 2)
    assert G(3, 1) != 3
    assert not (G(0, 1) == 0)


def test_hash_matches_int_and_fraction_when_real():
    assert hash(G(7)) == hash(7)
    assert hash(G(Fraction(2, 3))) == hash(Fraction(2, 3))
    d = {G(7): "a"}
    assert d[7] == "a"


def test_str_rendering():
    assert str(ZERO) == "0"
    assert str(I) == "i"
    assert str(MINUS_I) == "-i"
    assert str(G(0, 2)) == "2i"
    assert str(G(Fraction(2, 3), Fraction(-1, 2))) == "2/3-1/2i"
    assert str(G(1, 1)) == "1+i"


def test_latex_rendering():
    assert G(Fraction(1, 2)).to_latex() == r"\frac{1}{2}"
    assert I.to_latex() == "i"
    assert G(1, -1).to_latex() == "1 - i"


def test_list_round_trip():
    g = G(Fraction(-3, 7), Fraction(5, 2))
    assert g.to_list() == [-3, 7, 5, 2]
    assert GaussianRational.from_list(g.to_list()) == g


@pytest.mark.parametrize(
    "bad",
    [
        [1, 2, 3],
        [1, 0, 0, 1],
        [1, 1, 1, 0],
        ["1", 1, 0, 1],
        [True, 1, 0, 1],
        "nope",
        None,
    ],
)
def test_from_list_rejects_malformed(bad):
    with pytest.raises(ValueError):
        GaussianRational.from_list(bad)


@given(gaussians, gaussians, gaussians)
def test_ring_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert a + b == b + a
    assert (a * b) * c == a * (b * c)
    assert a * b == b * a
    assert a * (b + c) == a * b + a * c


@given(nonzero_gaussians)
def test_multiplicative_inverse(a):
    assert a * a.inverse() == ONE


@given(gaussians)
def test_conjugation_gives_norm(a):
    n = a * a.conjugate()
    assert n.im == 0
    assert n.re >= 0
    assert n.re == a.re * a.re + a.im * a.im


@given(gaussians)
def test_serialization_round_trip(a):
    assert GaussianRational.from_list(a.to_list()) == a


@given(gaussians, st.integers(min_value=0, max_value=12))
def test_pow_matches_repeated_multiplication(a, n):
    expected = ONE
    for _ in range(n):
        expected = expected * a
    assert a**n == expected
