"""
Polynomial rings K[v_1..v_n] with named variables and a term order.
Polynomials are sympy ring elements (sparse dicts from exponent tuples to
field coefficients); this module adds the naming, ordering and printing.
"""

from typing import Dict, Iterable, Optional, Sequence, Tuple

from sympy import Symbol
from sympy.polys.orderings import lex
from sympy.polys.rings import PolyRing

from flatlab.kernel.errors import InvalidArgumentError, RingMismatchError
from flatlab.kernel.field import CoefficientField
from flatlab.kernel.monomial_order import MonomialOrder


class PolynomialRing:
    """Polynomial ring over a coefficient field."""

    def __init__(
        self,
        field: CoefficientField,
        variables: Sequence[str],
        order: Optional[MonomialOrder] = None,
    ):
        variables = tuple(variables)
        if not variables:
            raise InvalidArgumentError("A polynomial ring needs at least one variable")
        if len(set(variables)) != len(variables):
            raise InvalidArgumentError(f"Duplicate variable names in {variables}")
        self.field = field
        self.variables = variables
        self.order = order or MonomialOrder()
        # the sympy ring is only used for arithmetic, ordering is our own
        self.sympy_ring = PolyRing([Symbol(name) for name in variables], field.domain, lex)
        self._indexes = {name: i for i, name in enumerate(variables)}

    def __eq__(self, other):
        return (
            isinstance(other, PolynomialRing)
            and self.field == other.field
            and self.variables == other.variables
            and self.order == other.order
        )

    def __hash__(self):
        return hash((self.field, self.variables, self.order))

    def __repr__(self):
        return f"PolynomialRing({self.field}, {list(self.variables)}, {self.order})"

    @property
    def nvars(self):
        return len(self.variables)

    @property
    def zero(self):
        return self.sympy_ring.zero

    @property
    def one(self):
        return self.sympy_ring.one

    @property
    def gens(self):
        return self.sympy_ring.gens

    def gen(self, name):
        return self.gens[self.index(name)]

    def index(self, name):
        try:
            return self._indexes[name]
        except KeyError:
            raise InvalidArgumentError(f"Unknown variable '{name}'")

    def with_order(self, order: MonomialOrder):
        if order == self.order:
            return self
        return PolynomialRing(self.field, self.variables, order)

    def constant(self, value):
        return self.sympy_ring.ground_new(self.field.domain.convert(value))

    def term(self, monomial: Tuple[int, ...], coefficient):
        return self.sympy_ring.term_new(monomial, coefficient)

    def from_terms(self, terms: Dict[Tuple[int, ...], object]):
        return self.sympy_ring.from_dict(dict(terms))

    def owns(self, poly):
        return getattr(poly, "ring", None) == self.sympy_ring

    def check(self, poly):
        if not self.owns(poly):
            raise RingMismatchError(
                f"Polynomial does not belong to the ring over {self.variables}"
            )
        return poly

    def map_poly(self, poly, source, rename: Optional[Dict[str, str]] = None):
        """Map a polynomial from `source` into this ring by variable names.

        `rename` maps source names to names of this ring; other names are
        kept. A variable of the source missing here raises RingMismatchError
        if it occurs in the polynomial.
        """
        rename = rename or {}
        targets = []
        for name in source.variables:
            target = rename.get(name, name)
            targets.append(self._indexes.get(target))
        terms = {}
        for monomial, coefficient in poly.items():
            exponents = [0] * self.nvars
            for source_index, exponent in enumerate(monomial):
                if not exponent:
                    continue
                target_index = targets[source_index]
                if target_index is None:
                    raise RingMismatchError(
                        f"Variable '{source.variables[source_index]}'"
                        f" has no image in {self.variables}"
                    )
                exponents[target_index] += exponent
            terms[tuple(exponents)] = coefficient
        return self.from_terms(terms)

    def sorted_terms(self, poly):
        """Terms of `poly` in descending order."""
        return sorted(poly.items(), key=lambda term: self.order.key(term[0]), reverse=True)

    def leading_monomial(self, poly):
        return max(poly.keys(), key=self.order.key)

    def degree(self, poly):
        """Total degree, -1 for the zero polynomial."""
        if not poly:
            return -1
        return max(sum(monomial) for monomial in poly.keys())

    def used_variables(self, poly) -> Tuple[str, ...]:
        used = set()
        for monomial in poly.keys():
            used.update(i for i, exponent in enumerate(monomial) if exponent)
        return tuple(self.variables[i] for i in sorted(used))

    def make_primitive(self, poly):
        if not poly:
            return poly
        coefficients = [c for _, c in self.sorted_terms(poly)]
        return poly.quo_ground(self.field.content(coefficients))

    def format_monomial(self, monomial):
        factors = []
        for name, exponent in zip(self.variables, monomial):
            if exponent == 1:
                factors.append(name)
            elif exponent > 1:
                factors.append(f"{name}^{exponent}")
        return "*".join(factors)

    def format(self, poly) -> str:
        """Canonical text of a polynomial, e.g. ``s^2*t - 3/2*s + 1``."""
        if not poly:
            return "0"
        parts = []
        for monomial, coefficient in self.sorted_terms(poly):
            numerator, denominator = self.field.to_integer_pair(coefficient)
            negative = numerator < 0
            numerator = abs(numerator)
            if denominator == 1:
                coefficient_text = str(numerator)
            else:
                coefficient_text = f"{numerator}/{denominator}"
            monomial_text = self.format_monomial(monomial)
            if not monomial_text:
                text = coefficient_text
            elif coefficient_text == "1":
                text = monomial_text
            else:
                text = f"{coefficient_text}*{monomial_text}"
            if not parts:
                parts.append(f"-{text}" if negative else text)
            else:
                parts.append(f"- {text}" if negative else f"+ {text}")
        return " ".join(parts)

    def format_vector(self, vector: Iterable) -> str:
        return "(" + ", ".join(self.format(p) for p in vector) + ")"
