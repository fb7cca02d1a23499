"""
Exact base fields and their elements.

A ``Field`` wraps a sympy polynomial domain: ``QQ`` for the rationals,
``GF(p)`` for prime fields and ``QQ.cyclotomic_field(n)`` for Q(zeta_n).
Internally the engine works with the raw domain elements for speed; the
``Scalar`` wrapper is what the public API hands out and accepts.
"""
import logging
import random
import re
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from typing import Any, List, Sequence, Tuple

from sympy import Integer, Poly, Rational, Symbol, isprime, sympify, totient
from sympy.core.sympify import SympifyError
from sympy.ntheory import primitive_root
from sympy.polys.densebasic import dup_strip
from sympy.polys.domains import GF, QQ
from sympy.polys.factortools import dup_factor_list
from sympy.polys.polyerrors import BasePolynomialError

from shared.errors import DivisionByZeroError, FieldMismatchError, HopfError, ParseError

logger = logging.getLogger(__name__)

GENERATOR = Symbol("z")
_LITERAL = re.compile(r"^[0-9z+\-*/^()\s]+$")


class FieldKind(str, Enum):
    RATIONALS = "rationals"
    PRIME = "prime"
    CYCLOTOMIC = "cyclotomic"


class Field:
    """An exact field: the rationals, F_p or Q(zeta_n)"""

    def __init__(self, kind: FieldKind, modulus: int = 0):
        kind = FieldKind(kind)
        if kind == FieldKind.PRIME:
            if not isprime(modulus):
                raise HopfError(f"prime field modulus {modulus} is not prime")
            self.domain = GF(modulus)
        elif kind == FieldKind.CYCLOTOMIC:
            if modulus < 3:
                raise HopfError("cyclotomic fields need n >= 3; Q(zeta_1) and Q(zeta_2) are the rationals")
            self.domain = QQ.cyclotomic_field(modulus)
        else:
            modulus = 0
            self.domain = QQ
        self.kind = kind
        self.modulus = modulus
        self.degree = int(totient(modulus)) if kind == FieldKind.CYCLOTOMIC else 1
        self.zero = self.domain.zero
        self.one = self.domain.one
        if kind == FieldKind.CYCLOTOMIC:
            self.generator = self.domain([QQ.one, QQ.zero])
        else:
            self.generator = None

    @property
    def descriptor(self) -> str:
        if self.kind == FieldKind.RATIONALS:
            return "rationals"
        return f"{self.kind.value}:{self.modulus}"

    @property
    def characteristic(self) -> int:
        return self.modulus if self.kind == FieldKind.PRIME else 0

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Field) and (self.kind, self.modulus) == (other.kind, other.modulus)

    def __hash__(self) -> int:
        return hash((self.kind, self.modulus))

    def __repr__(self) -> str:
        return f"Field({self.descriptor})"

    # -- conversion -------------------------------------------------------

    def _fraction(self, numerator: int, denominator: int) -> Any:
        if denominator == 0:
            raise DivisionByZeroError("zero denominator in literal")
        num = self.domain.convert(int(numerator))
        den = self.domain.convert(int(denominator))
        if not den:
            raise DivisionByZeroError(f"denominator {denominator} vanishes in {self.descriptor}")
        return num / den

    def convert(self, value: Any) -> Any:
        """Coerce ints, fractions, literals, Scalars or domain elements into this field"""
        if isinstance(value, Scalar):
            if value.field != self:
                raise FieldMismatchError(f"scalar from {value.field.descriptor} used in {self.descriptor}")
            return value.value
        if isinstance(value, bool):
            value = int(value)
        if isinstance(value, int):
            return self.domain.convert(value)
        if isinstance(value, Fraction):
            return self._fraction(value.numerator, value.denominator)
        if isinstance(value, (Rational, Integer)):
            return self._fraction(int(value.p), int(value.q))
        if isinstance(value, str):
            return self.parse(value)
        if isinstance(value, self.domain.dtype):
            return value
        if self.kind == FieldKind.CYCLOTOMIC and isinstance(value, QQ.dtype):
            return self.domain.convert_from(value, QQ)
        raise FieldMismatchError(f"cannot interpret {value!r} in {self.descriptor}")

    def scalar(self, value: Any) -> "Scalar":
        return Scalar(self, value)

    # -- arithmetic on raw elements ---------------------------------------

    def is_zero(self, a: Any) -> bool:
        return not a

    def inverse(self, a: Any) -> Any:
        if not a:
            raise DivisionByZeroError(f"inverse of zero in {self.descriptor}")
        return self.one / a

    def power(self, a: Any, k: int) -> Any:
        if k < 0:
            return self.power(self.inverse(a), -k)
        result = self.one
        for _ in range(k):
            result = result * a
        return result

    # -- literals ---------------------------------------------------------

    def parse(self, text: str) -> Any:
        """Parse a scalar literal: "a/b", an integer, or a polynomial in z"""
        source = str(text).strip()
        if not source or not _LITERAL.match(source):
            raise ParseError(f"invalid scalar literal {text!r}")
        if "z" in source and self.kind != FieldKind.CYCLOTOMIC:
            raise ParseError(f"symbol z is only meaningful in cyclotomic fields, got {text!r}")
        try:
            expr = sympify(source.replace("^", "**"), locals={"z": GENERATOR})
        except (SympifyError, SyntaxError, TypeError) as e:
            raise ParseError(f"invalid scalar literal {text!r}: {e}")
        if self.kind != FieldKind.CYCLOTOMIC:
            if not isinstance(expr, Rational):
                raise ParseError(f"literal {text!r} is not a rational number")
            return self._fraction(int(expr.p), int(expr.q))
        try:
            coeffs = Poly(expr, GENERATOR, domain=QQ).all_coeffs()
        except (BasePolynomialError, TypeError, ValueError) as e:
            raise ParseError(f"literal {text!r} is not a polynomial in z: {e}")
        value = self.zero
        for c in coeffs:
            value = value * self.generator + self._fraction(int(c.p), int(c.q))
        return value

    def format(self, a: Any) -> str:
        """Canonical literal for a raw element; parse(format(a)) == a"""
        if self.kind == FieldKind.PRIME:
            return str(self.domain.to_int(a) % self.modulus)
        if self.kind == FieldKind.RATIONALS:
            return _format_rational(a)
        coeffs = list(reversed(a.to_list()))
        terms = []
        for power, c in enumerate(coeffs):
            if not c:
                continue
            magnitude = _format_rational(abs(c))
            if power == 0:
                body = magnitude
            else:
                monomial = "z" if power == 1 else f"z^{power}"
                body = monomial if magnitude == "1" else f"{magnitude}*{monomial}"
            terms.append((c < 0, body))
        if not terms:
            return "0"
        negative, body = terms[0]
        text = f"-{body}" if negative else body
        for negative, body in terms[1:]:
            text += f" - {body}" if negative else f" + {body}"
        return text

    # -- roots ------------------------------------------------------------

    def primitive_root_of_unity(self, n: int) -> "Scalar":
        """A primitive n-th root of unity in this field"""
        if n < 1:
            raise HopfError(f"order of a root of unity must be positive, got {n}")
        if n == 1:
            return Scalar(self, self.one)
        if self.kind == FieldKind.RATIONALS:
            if n == 2:
                return Scalar(self, -self.one)
        elif self.kind == FieldKind.PRIME:
            p = self.modulus
            if (p - 1) % n == 0:
                root = self.domain.convert(primitive_root(p))
                return Scalar(self, self.power(root, (p - 1) // n))
        else:
            m = self.modulus
            if m % n == 0:
                return Scalar(self, self.power(self.generator, m // n))
            if m % 2 == 1 and n % 2 == 0 and m % (n // 2) == 0:
                return Scalar(self, -self.power(self.generator, m // (n // 2)))
        raise HopfError(f"{self.descriptor} contains no primitive root of unity of order {n}")

    def roots(self, coeffs: Sequence[Any]) -> Tuple[List[Any], bool]:
        """Roots lying in the field of a polynomial (coefficients highest first) and whether it splits"""
        f = dup_strip([self.convert(c) for c in coeffs])
        degree = len(f) - 1
        if degree <= 0:
            return [], True
        _, factors = dup_factor_list(f, self.domain)
        found: List[Any] = []
        linear_degree = 0
        for factor, multiplicity in factors:
            if len(factor) != 2:
                continue
            root = -factor[1] / factor[0]
            if root not in found:
                found.append(root)
            linear_degree += multiplicity
        return found, linear_degree == degree

    def random_element(self, rng: random.Random, bound: int = 5) -> Any:
        """Small random element, used for sampled checks and search candidates"""
        if self.kind == FieldKind.CYCLOTOMIC:
            value = self.zero
            for _ in range(self.degree):
                value = value * self.generator + self.domain.convert(rng.randint(-bound, bound))
            return value
        if self.kind == FieldKind.RATIONALS:
            return self._fraction(rng.randint(-bound, bound), rng.randint(1, 3))
        return self.domain.convert(rng.randint(0, self.modulus - 1))


def _format_rational(a: Any) -> str:
    numerator = int(QQ.numer(a))
    denominator = int(QQ.denom(a))
    if denominator == 1:
        return str(numerator)
    return f"{numerator}/{denominator}"


class Scalar:
    """An element of a Field with exact arithmetic"""

    __slots__ = ("field", "value")

    def __init__(self, field: Field, value: Any):
        self.field = field
        self.value = field.convert(value)

    def _coerce(self, other: Any) -> Any:
        if isinstance(other, Scalar) and other.field != self.field:
            raise FieldMismatchError(
                f"mixed-field operands {self.field.descriptor} and {other.field.descriptor}"
            )
        return self.field.convert(other)

    def __add__(self, other: Any) -> "Scalar":
        return Scalar(self.field, self.value + self._coerce(other))

    __radd__ = __add__

    def __sub__(self, other: Any) -> "Scalar":
        return Scalar(self.field, self.value - self._coerce(other))

    def __rsub__(self, other: Any) -> "Scalar":
        return Scalar(self.field, self._coerce(other) - self.value)

    def __mul__(self, other: Any) -> "Scalar":
        return Scalar(self.field, self.value * self._coerce(other))

    __rmul__ = __mul__

    def __truediv__(self, other: Any) -> "Scalar":
        return Scalar(self.field, self.value * self.field.inverse(self._coerce(other)))

    def __rtruediv__(self, other: Any) -> "Scalar":
        return Scalar(self.field, self._coerce(other) * self.field.inverse(self.value))

    def __neg__(self) -> "Scalar":
        return Scalar(self.field, -self.value)

    def __pow__(self, k: int) -> "Scalar":
        return Scalar(self.field, self.field.power(self.value, k))

    def inverse(self) -> "Scalar":
        return Scalar(self.field, self.field.inverse(self.value))

    def is_zero(self) -> bool:
        return not self.value

    def __eq__(self, other: object) -> bool:
        if isinstance(other, Scalar):
            return self.field == other.field and self.value == other.value
        try:
            return self.value == self.field.convert(other)
        except (FieldMismatchError, ParseError):
            return False

    def __hash__(self) -> int:
        return hash((self.field, self.value))

    def __str__(self) -> str:
        return self.field.format(self.value)

    def __repr__(self) -> str:
        return f"Scalar({self.field.descriptor}, {self})"


RATIONALS = Field(FieldKind.RATIONALS)


@lru_cache(maxsize=None)
def get_field(descriptor: str) -> Field:
    """Field from its descriptor: rationals, prime:p or cyclotomic:n"""
    text = descriptor.strip().lower()
    if text in ("rationals", "q", "qq"):
        return RATIONALS
    kind, _, arg = text.partition(":")
    try:
        modulus = int(arg)
    except ValueError:
        raise ParseError(f"unknown field descriptor {descriptor!r}", location="field")
    try:
        if kind == FieldKind.PRIME.value:
            return Field(FieldKind.PRIME, modulus)
        if kind == FieldKind.CYCLOTOMIC.value:
            return cyclotomic(modulus)
    except HopfError as e:
        raise ParseError(e.detail, location="field")
    raise ParseError(f"unknown field descriptor {descriptor!r}", location="field")


def cyclotomic(n: int) -> Field:
    """Q(zeta_n); the rationals for n <= 2"""
    if n < 1:
        raise HopfError(f"cyclotomic order must be positive, got {n}")
    if n <= 2:
        return RATIONALS
    return _cyclotomic(n)


@lru_cache(maxsize=None)
def _cyclotomic(n: int) -> Field:
    logger.debug("building cyclotomic field of order %d", n)
    return Field(FieldKind.CYCLOTOMIC, n)


def prime_field(p: int) -> Field:
    return get_field(f"prime:{p}")
