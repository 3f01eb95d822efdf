import json
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from symtwistor.exactnum import G, I
from symtwistor.spinor import EVEN, MIXED, ODD, QPoly, Spinor
from symtwistor.weyl import BasisMismatchError, BasisTag

XY, ZZ = BasisTag.XY, BasisTag.ZZBAR


# ---- QPoly ----


def test_qpoly_trims_trailing_zeros():
    p = QPoly([1, 2, 0, 0])
    assert p.degree() == 1
    assert p == QPoly([1, 2])
    assert QPoly([0, 0]).is_zero()
    assert QPoly([]).degree() is None


def test_qpoly_coefficient_out_of_range_is_zero():
    p = QPoly([1, 2])
    assert p.coefficient(5) == G(0)
    assert p.coefficient(1) == 2


def test_qpoly_arithmetic():
    p, r = QPoly([1, 0, 2]), QPoly([0, 1])
    assert p + r == QPoly([1, 1, 2])
    assert p - p == QPoly([])
    assert -r == QPoly([0, -1])
    assert p.scale(I) == QPoly([I, G(0), G(0, 2)])


def test_qpoly_shift_and_derivative():
    p = QPoly([1, 2, 3])
    assert p.shift(2) == QPoly([0, 0, 1, 2, 3])
    assert p.derivative() == QPoly([2, 6])
    assert QPoly([5]).derivative().is_zero()


def test_qpoly_weighted_dq():
    # on stored data, dq acts as d/dq - q
    assert QPoly([1]).weighted_dq() == QPoly([0, -1])
    assert QPoly([0, 1]).weighted_dq() == QPoly([1, 0, -1])


def test_qpoly_parity():
    assert QPoly([1, 0, 2]).parity() == EVEN
    assert QPoly([0, 1]).parity() == ODD
    assert QPoly([1, 1]).parity() == MIXED
    assert QPoly([]).parity() == EVEN


def test_qpoly_monomial():
    assert QPoly.monomial(3) == QPoly([0, 0, 0, 1])
    assert QPoly.monomial(1, Fraction(1, 2)) == QPoly([0, Fraction(1, 2)])


# ---- Spinor ----


def test_spinor_drops_zero_polys():
    s = Spinor(XY, {(1, 0): QPoly([1]), (0, 1): QPoly([])})
    assert set(s.terms) == {(1, 0)}
    assert Spinor(XY, {(0, 0): QPoly([0])}).is_zero()


def test_spinor_linear_ops():
    a = Spinor.monomial(XY, 1, 0, QPoly([1]))
    b = Spinor.monomial(XY, 0, 1, QPoly([0, 2]))
    s = a + b
    assert s - a == b
    assert (-s) + s == Spinor.zero(XY)
    assert s.scale(Fraction(1, 2)).scale(2) == s


def test_spinor_mixed_basis_add_rejected():
    a = Spinor.monomial(XY, 1, 0, QPoly([1]))
    b = Spinor.monomial(ZZ, 1, 0, QPoly([1]))
    with pytest.raises(BasisMismatchError):
        a + b


def test_homogeneity():
    assert Spinor.monomial(XY, 2, 1, QPoly([1])).homogeneity() == 3
    mixed = Spinor(XY, {(1, 0): QPoly([1]), (2, 0): QPoly([1])})
    assert mixed.homogeneity() is None
    assert Spinor.zero(XY).homogeneity() is None


def test_parity_and_q_degree():
    s = Spinor(XY, {(1, 0): QPoly([1, 0, 2]), (0, 1): QPoly([3])})
    assert s.parity() == EVEN
    assert s.q_degree() == 2
    assert s.min_q_degree() == 0
    odd = Spinor.monomial(XY, 0, 0, QPoly([0, 1]))
    assert odd.parity() == ODD
    assert Spinor(XY, {(0, 0): QPoly([1, 1])}).parity() == MIXED


def test_coefficient_of_is_xy_only():
    s = Spinor.monomial(XY, 2, 0, QPoly([0, 0, 5]))
    assert s.coefficient_of(2, 0, 2) == 5
    assert s.coefficient_of(1, 1, 2) == G(0)
    with pytest.raises(BasisMismatchError):
        Spinor.monomial(ZZ, 1, 0, QPoly([1])).coefficient_of(1, 0, 0)


def test_change_basis_monomials():
    # z = x + iy
    z = Spinor.monomial(ZZ, 1, 0, QPoly([1]))
    assert z.change_basis(XY) == Spinor(
        XY, {(1, 0): QPoly([1]), (0, 1): QPoly([I])}
    )
    # x = (z + zbar)/2
    x = Spinor.monomial(XY, 1, 0, QPoly([1]))
    half = Fraction(1, 2)
    assert x.change_basis(ZZ) == Spinor(
        ZZ, {(1, 0): QPoly([half]), (0, 1): QPoly([half])}
    )


def test_change_basis_preserves_structure():
    s = Spinor(XY, {(2, 1): QPoly([1, 2]), (0, 0): QPoly([I])})
    t = s.change_basis(ZZ)
    assert t.basis is ZZ
    assert t.q_degree() == s.q_degree()
    assert t.change_basis(XY) == s


def test_json_shape():
    s = Spinor(XY, {(1, 0): QPoly([Fraction(2, 3), I])})
    data = s.to_json()
    assert data == {
        "basis": "xy",
        "terms": [{"e1": 1, "e2": 0, "q": [[2, 3, 0, 1], [0, 1, 1, 1]]}],
    }
    assert Spinor.from_json(json.loads(json.dumps(data))) == s


def test_json_terms_sorted_deterministically():
    s = Spinor(XY, {(2, 0): QPoly([1]), (0, 2): QPoly([1]), (1, 1): QPoly([1])})
    keys = [(t["e1"], t["e2"]) for t in s.to_json()["terms"]]
    assert keys == [(0, 2), (1, 1), (2, 0)]


@pytest.mark.parametrize(
    "data, fragment",
    [
        ("nope", "object"),
        ({}, "basis"),
        ({"basis": "polar", "terms": []}, "basis"),
        ({"basis": "xy"}, "terms"),
        ({"basis": "xy", "terms": [3]}, "terms[0]"),
        ({"basis": "xy", "terms": [{"e1": 0, "e2": "x", "q": []}]}, "terms[0].e2"),
        ({"basis": "xy", "terms": [{"e1": 0, "e2": 0, "q": 5}]}, "terms[0].q"),
        (
            {"basis": "xy", "terms": [{"e1": 0, "e2": 0, "q": [[1, 0, 0, 1]]}]},
            "denominator",
        ),
        (
            {"basis": "xy", "terms": [{"e1": 0, "e2": 0, "q": [[1]]}]},
            "terms[0].q[0]",
        ),
    ],
)
def test_from_json_error_paths(data, fragment):
    with pytest.raises(ValueError) as exc:
        Spinor.from_json(data)
    assert fragment in str(exc.value)


def test_from_json_merges_duplicate_keys():
    data = {
        "basis": "xy",
        "terms": [
            {"e1": 1, "e2": 0, "q": [[1, 1, 0, 1]]},
            {"e1": 1, "e2": 0, "q": [[2, 1, 0, 1]]},
        ],
    }
    assert Spinor.from_json(data) == Spinor.monomial(XY, 1, 0, QPoly([3]))


def test_str_shows_weight_prefix():
    s = Spinor.monomial(XY, 1, 0, QPoly([0, 1]))
    assert str(s) == "exp(-q^2/2) * ((q)*x)"
    assert str(Spinor.zero(XY)) == "0"


def test_latex_shows_weight_prefix():
    s = Spinor.monomial(ZZ, 0, 1, QPoly([1]))
    assert s.to_latex() == r"e^{-q^2/2}\left(\left(1\right) \bar{z}\right)"


# ---- properties ----

coeffs = st.builds(
    G,
    st.fractions(min_value=-9, max_value=9, max_denominator=5),
    st.fractions(min_value=-9, max_value=9, max_denominator=5),
)


@st.composite
def spinors(draw, basis=XY):
    n = draw(st.integers(min_value=0, max_value=3))
    terms = {}
    for _ in range(n):
        key = (
            draw(st.integers(min_value=0, max_value=3)),
            draw(st.integers(min_value=0, max_value=3)),
        )
        terms[key] = QPoly(draw(st.lists(coeffs, max_size=5)))
    return Spinor(basis, terms)


@settings(max_examples=60, deadline=None)
@given(spinors())
def test_basis_round_trip(s):
    assert s.change_basis(ZZ).change_basis(XY) == s


@settings(max_examples=40, deadline=None)
@given(spinors(), spinors())
def test_change_basis_additive(a, b):
    assert (a + b).change_basis(ZZ) == a.change_basis(ZZ) + b.change_basis(ZZ)


@settings(max_examples=60, deadline=None)
@given(spinors())
def test_json_round_trip_property(s):
    assert Spinor.from_json(json.loads(json.dumps(s.to_json()))) == s
