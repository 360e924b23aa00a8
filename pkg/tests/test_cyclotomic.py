from fractions import Fraction

from hypothesis import given, settings
from hypothesis import strategies as st

from modtv.cyclotomic import CyclotomicField, cyclotomic_polynomial, scalar_from_json

F5 = CyclotomicField(5)
F8 = CyclotomicField(8)


def test_polynomials():
    assert cyclotomic_polynomial(1) == (-1, 1)
    assert cyclotomic_polynomial(5) == (1, 1, 1, 1, 1)
    assert cyclotomic_polynomial(8) == (1, 0, 0, 0, 1)
    assert cyclotomic_polynomial(6) == (1, -1, 1)


def test_field_is_cached():
    assert CyclotomicField(5) is F5


def test_golden_ratio():
    z = F5.zeta()
    phi = -(z**2 + z**3)
    assert phi * phi == phi + 1
    assert (phi - 1) * phi == 1


def test_sqrt2_in_q_zeta8():
    z = F8.zeta()
    r = z - z**3
    assert r * r == 2
    assert abs(r.to_complex() - 2 ** 0.5) < 1e-12


def test_zeta_order():
    assert F5.zeta() ** 5 == 1
    assert F5.zeta() ** 3 != 1
    assert F5.zeta(7) == F5.zeta(2)


def test_rational_roundtrip():
    x = F5.from_fraction(Fraction(-3, 7))
    assert x.is_rational() and x.to_fraction() == Fraction(-3, 7)
    assert scalar_from_json(F5, x.to_json()) == x


scalars5 = st.lists(st.integers(-6, 6), min_size=4, max_size=4).map(F5.from_coeffs)


@settings(max_examples=60, deadline=None)
@given(scalars5, scalars5, scalars5)
def test_ring_axioms(a, b, c):
    assert (a + b) * c == a * c + b * c
    assert a * (b * c) == (a * b) * c
    assert a * b == b * a


@settings(max_examples=60, deadline=None)
@given(scalars5)
def test_inverse(a):
    if a.is_zero():
        return
    assert a * a.inverse() == 1
    assert (a / a) == 1


@settings(max_examples=40, deadline=None)
@given(scalars5, scalars5)
def test_complex_embedding_is_a_homomorphism(a, b):
    assert abs((a * b).to_complex() - a.to_complex() * b.to_complex()) < 1e-6
    assert abs((a + b).to_complex() - a.to_complex() - b.to_complex()) < 1e-9


@settings(max_examples=40, deadline=None)
@given(scalars5)
def test_json_roundtrip(a):
    assert scalar_from_json(F5, a.to_json()) == a
    assert scalar_from_json(F5, (a / 3).to_json()) == a / 3
