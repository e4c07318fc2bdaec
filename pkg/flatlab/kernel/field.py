"""
Coefficient fields of the polynomial rings: the rationals or a prime field.
"""

from dataclasses import dataclass
from functools import cached_property
from math import gcd, lcm
from typing import Iterable

from sympy import GF, QQ, isprime

from flatlab.kernel.errors import InvalidArgumentError


@dataclass(frozen=True)
class CoefficientField:
    """The field K of a base ring K[x_1..x_m].

    A characteristic of 0 stands for the rationals, a prime p for F_p.
    """

    characteristic: int = 0

    def __post_init__(self):
        if self.characteristic < 0 or (
            self.characteristic and not isprime(self.characteristic)
        ):
            raise InvalidArgumentError(
                f"Field characteristic {self.characteristic} is neither 0 nor prime"
            )

    @classmethod
    def rationals(cls):
        return cls(0)

    @classmethod
    def prime_field(cls, prime):
        return cls(prime)

    @cached_property
    def domain(self):
        if self.characteristic == 0:
            return QQ
        return GF(self.characteristic, symmetric=False)

    @property
    def name(self):
        if self.characteristic == 0:
            return "Q"
        return f"F {self.characteristic}"

    def __str__(self):
        return self.name

    def rational(self, numerator, denominator=1):
        """Return the field element numerator/denominator."""
        if denominator == 0:
            raise InvalidArgumentError("Division by zero in coefficient")
        if self.characteristic == 0:
            return self.domain(numerator, denominator)
        if denominator % self.characteristic == 0:
            raise InvalidArgumentError(
                f"Denominator {denominator} vanishes in {self.name}"
            )
        return self.domain(numerator) / self.domain(denominator)

    def quotient(self, numerator, denominator):
        return self.domain.quo(numerator, denominator)

    def to_integer_pair(self, value):
        """Return (numerator, denominator) of a field element as integers."""
        if self.characteristic == 0:
            return int(value.numerator), int(value.denominator)
        return int(value) % self.characteristic, 1

    def format(self, value):
        numerator, denominator = self.to_integer_pair(value)
        if denominator == 1:
            return str(numerator)
        return f"{numerator}/{denominator}"

    def content(self, coefficients: Iterable):
        """Return the factor that makes the coefficients primitive.

        Over the rationals this is the positive rational whose quotient leaves
        coprime integers, with the sign of the first coefficient.
        Over a prime field it is the first coefficient (making it monic).
        """
        coefficients = list(coefficients)
        if not coefficients:
            return self.domain.one
        if self.characteristic:
            return coefficients[0]
        numerator_gcd = 0
        denominator_lcm = 1
        for coefficient in coefficients:
            numerator, denominator = self.to_integer_pair(coefficient)
            numerator_gcd = gcd(numerator_gcd, numerator)
            denominator_lcm = lcm(denominator_lcm, denominator)
        content = self.domain(numerator_gcd, denominator_lcm)
        if coefficients[0] < 0:
            content = -content
        return content
