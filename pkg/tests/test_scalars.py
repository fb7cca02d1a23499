from fractions import Fraction

import pytest

from shared.errors import DivisionByZeroError, FieldMismatchError, HopfError, ParseError
from shared.scalars import RATIONALS, Scalar, cyclotomic, get_field, prime_field


def test_rational_literals_are_canonical():
    assert RATIONALS.format(RATIONALS.parse("-3/6")) == "-1/2"
    assert RATIONALS.format(RATIONALS.parse("4/2")) == "2"
    assert RATIONALS.convert(Fraction(3, 9)) == RATIONALS.parse("1/3")


def test_prime_field_reduces_and_inverts():
    F = prime_field(7)
    assert F.format(F.parse("10")) == "3"
    assert F.format(F.inverse(F.convert(3))) == "5"
    assert F.format(F.parse("1/2")) == "4"
    assert F.characteristic == 7


def test_prime_field_denominator_vanishing():
    with pytest.raises(DivisionByZeroError):
        prime_field(5).parse("1/5")


def test_cyclotomic_generator_satisfies_its_minimal_polynomial():
    F = cyclotomic(3)
    assert F.degree == 2
    assert F.is_zero(F.parse("z^2 + z + 1"))
    assert F.format(F.generator) == "z"
    assert F.power(F.generator, 3) == F.one


def test_cyclotomic_format_parses_back():
    F = cyclotomic(5)
    for literal in ("z^4", "3*z^2 - 1/2", "z^7 + z^5", "-z"):
        value = F.parse(literal)
        assert F.parse(F.format(value)) == value


def test_small_cyclotomic_orders_are_the_rationals():
    assert cyclotomic(1) is RATIONALS
    assert cyclotomic(2) is RATIONALS
    assert cyclotomic(3) is cyclotomic(3)


def test_z_only_in_cyclotomic_fields():
    with pytest.raises(ParseError):
        RATIONALS.parse("z + 1")


@pytest.mark.parametrize("literal", ["", "1.5", "abc", "2**", "1/0"])
def test_bad_literals(literal):
    with pytest.raises(HopfError):
        RATIONALS.parse(literal)


@pytest.mark.parametrize("literal", ["zz", "1/0", "z/0", "1/z", "z^(1/2)"])
def test_bad_cyclotomic_literals(literal):
    with pytest.raises(ParseError):
        cyclotomic(3).parse(literal)


def test_primitive_roots_of_unity():
    assert RATIONALS.primitive_root_of_unity(2) == -1
    F7 = prime_field(7)
    root = F7.primitive_root_of_unity(3)
    assert root ** 3 == 1 and root != 1
    Q6 = cyclotomic(3)
    zeta6 = Q6.primitive_root_of_unity(6)
    assert zeta6 ** 6 == 1 and zeta6 ** 3 == -1 and zeta6 ** 2 != 1
    with pytest.raises(HopfError):
        RATIONALS.primitive_root_of_unity(3)
    with pytest.raises(HopfError):
        F7.primitive_root_of_unity(4)


def test_roots_report_whether_the_polynomial_splits():
    roots, splits = RATIONALS.roots([1, 0, -1])
    assert sorted(RATIONALS.format(r) for r in roots) == ["-1", "1"]
    assert splits
    roots, splits = RATIONALS.roots([1, 0, 1])
    assert roots == [] and not splits
    roots, splits = cyclotomic(4).roots([1, 0, 1])
    assert len(roots) == 2 and splits


def test_repeated_roots_count_with_multiplicity():
    roots, splits = RATIONALS.roots([1, -2, 1])
    assert roots == [RATIONALS.one] and splits


def test_scalar_arithmetic():
    half = Scalar(RATIONALS, "1/2")
    assert half + half == 1
    assert str(half * 3 - 1) == "1/2"
    assert (1 / half) == 2
    assert half ** -2 == 4
    assert -half == Scalar(RATIONALS, "-1/2")


def test_scalar_inverse_of_zero():
    with pytest.raises(ZeroDivisionError):
        Scalar(RATIONALS, 0).inverse()
    with pytest.raises(DivisionByZeroError):
        Scalar(prime_field(3), 3).inverse()


def test_mixed_fields_are_rejected():
    with pytest.raises(FieldMismatchError):
        Scalar(RATIONALS, 1) + Scalar(prime_field(5), 1)
    with pytest.raises(FieldMismatchError):
        prime_field(5).convert(Scalar(prime_field(7), 1))


@pytest.mark.parametrize("descriptor, expected", [
    ("rationals", "rationals"),
    ("QQ", "rationals"),
    ("prime:11", "prime:11"),
    ("cyclotomic:8", "cyclotomic:8"),
    ("cyclotomic:2", "rationals"),
])
def test_field_descriptors(descriptor, expected):
    assert get_field(descriptor).descriptor == expected


@pytest.mark.parametrize("descriptor", ["reals", "prime:4", "prime:x", "cyclotomic:0"])
def test_unknown_field_descriptors(descriptor):
    with pytest.raises(ParseError):
        get_field(descriptor)
