from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from arrcoh.fields import (
    FormalField,
    PrimeField,
    Rationals,
    ZeroUnit,
    backend_from_descriptor,
)

nonzero_rationals = st.fractions(
    min_value=-50, max_value=50, max_denominator=30
).filter(lambda x: x != 0)


def test_descriptor_roundtrip():
    for desc in ["q", "fp:5", "fp:2", "formal:a,b"]:
        assert backend_from_descriptor(desc).descriptor() == desc


def test_prime_check():
    with pytest.raises(ValueError):
        PrimeField(6)
    with pytest.raises(ValueError):
        PrimeField(1)


def test_rational_parse_canonical():
    q = Rationals()
    assert q.parse("-4/6") == Fraction(-2, 3)
    assert q.to_str(q.parse("-4/6")) == "-2/3"


def test_prime_field_ops():
    f = PrimeField(7)
    assert f.parse("10") == 3
    assert f.div(f.one, 3) == 5  # 3*5 = 15 = 1 mod 7
    assert f.sub(2, 5) == 4


def test_unit_factors_examples():
    q = Rationals()
    assert q.unit_factors(Fraction(-4, 9)) == [
        (Fraction(-1), 1),
        (Fraction(2), 2),
        (Fraction(3), -2),
    ]
    assert q.unit_factors(Fraction(1)) == []
    with pytest.raises(ZeroUnit):
        q.unit_factors(Fraction(0))


@given(nonzero_rationals, nonzero_rationals)
def test_unit_factors_multiplicative(a, b):
    q = Rationals()
    combined = {}
    for atom, e in q.unit_factors(a) + q.unit_factors(b):
        combined[atom] = combined.get(atom, 0) + e
    prod = {a2: e for a2, e in q.unit_factors(a * b)}
    # the sign atom is 2-torsion
    if Fraction(-1) in combined:
        combined[Fraction(-1)] %= 2
    combined = {a2: e for a2, e in combined.items() if e}
    assert combined == prod


@given(st.integers(1, 6), st.integers(1, 6))
def test_prime_field_unit_factors(a, b):
    f = PrimeField(7)
    fa = f.unit_factors(a)
    assert fa == [] if a == 1 else fa == [(a, 1)]


def test_formal_field_arithmetic():
    fm = FormalField(("a", "b"))
    x = fm.parse("(a**2 - 1)/(a - 1)")
    assert fm.eq(x, fm.parse("a + 1"))
    assert fm.to_str(fm.parse("2*a/b")) == "2*a/b"
    with pytest.raises(ZeroDivisionError):
        fm.div(fm.one, fm.zero)


def test_formal_unit_factors():
    fm = FormalField(("a", "b"))
    factors = fm.unit_factors(fm.parse("(a*b - b)/2"))
    rendered = [(fm.to_str(atom), e) for atom, e in factors]
    assert rendered == [("2", -1), ("a - 1", 1), ("b", 1)]


def test_formal_atom_concreteness():
    fm = FormalField(("a",))
    (atom_two, _), = fm.unit_factors(fm.parse("2"))
    (atom_a, _), = fm.unit_factors(fm.parse("a"))
    assert fm.atom_concrete(atom_two)
    assert not fm.atom_concrete(atom_a)
