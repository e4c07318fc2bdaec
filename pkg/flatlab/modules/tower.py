"""
Base rings R = K[x_1..x_m] and affine R-algebras A = R[y_1..y_n]/I.
"""

from dataclasses import dataclass, field
from functools import cached_property
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from flatlab import FlatlabError
from flatlab.kernel.field import CoefficientField
from flatlab.kernel.monomial_order import MonomialOrder
from flatlab.kernel.polynomial_ring import PolynomialRing
from flatlab.kernel.submodule import Ideal


class ModuleAlgebraError(FlatlabError):
    pass


class TowerMismatchError(ModuleAlgebraError):
    pass


class InvalidAlgebraError(ModuleAlgebraError):
    pass


class InvalidPowerError(ModuleAlgebraError):
    pass


def fresh_name(name: str, used: Iterable[str]) -> str:
    used = set(used)
    candidate = name
    counter = 1
    while candidate in used:
        candidate = f"{name}{counter}"
        counter += 1
    return candidate


@dataclass(frozen=True)
class BaseTower:
    """The polynomial base ring R = K[x_1..x_m]."""

    field: CoefficientField
    variables: Tuple[str, ...]
    order: MonomialOrder = MonomialOrder()

    def __post_init__(self):
        if not self.variables:
            raise InvalidAlgebraError("The base ring needs at least one variable")
        if len(set(self.variables)) != len(self.variables):
            raise InvalidAlgebraError(f"Duplicate base variables {self.variables}")

    @property
    def dim(self):
        return len(self.variables)

    @cached_property
    def ring(self) -> PolynomialRing:
        return PolynomialRing(self.field, self.variables, self.order)

    def with_order(self, order: MonomialOrder) -> "BaseTower":
        return BaseTower(self.field, self.variables, order)

    def doubled(self) -> "BaseTower":
        """The tower over K[x, x'] used by products over the field."""
        primed = tuple(f"{name}'" for name in self.variables)
        return BaseTower(self.field, self.variables + primed, self.order)

    def primed_names(self) -> Dict[str, str]:
        return {name: f"{name}'" for name in self.variables}

    def same_base(self, other: "BaseTower") -> bool:
        return self.field == other.field and self.variables == other.variables


@dataclass(frozen=True)
class AffineAlgebra:
    """A = R[y_1..y_n]/I with I given by polynomials of R[x, y].

    The witness of a module is its algebra; with no extra variables and no
    relations the algebra is R itself.
    """

    tower: BaseTower
    extra_variables: Tuple[str, ...] = ()
    relations: Tuple = ()
    name: str = field(default="", compare=False)

    def __post_init__(self):
        clash = set(self.extra_variables) & set(self.tower.variables)
        if clash:
            raise InvalidAlgebraError(
                f"Extra variables {sorted(clash)} collide with base variables"
            )
        if len(set(self.extra_variables)) != len(self.extra_variables):
            raise InvalidAlgebraError(f"Duplicate extra variables {self.extra_variables}")
        for relation in self.relations:
            self.ambient.check(relation)

    @classmethod
    def base(cls, tower: BaseTower, name="R"):
        return cls(tower, name=name)

    @classmethod
    def create(cls, tower, extra_variables: Sequence[str] = (), relations=(), name=""):
        return cls(tower, tuple(extra_variables), tuple(r for r in relations if r), name)

    @cached_property
    def ambient(self) -> PolynomialRing:
        """The polynomial ring P = K[x, y] presenting the algebra."""
        return PolynomialRing(
            self.tower.field, self.tower.variables + self.extra_variables, self.tower.order
        )

    @property
    def is_base(self) -> bool:
        return not self.extra_variables and not self.relations

    @property
    def base_dim(self):
        return self.tower.dim

    @cached_property
    def ideal(self) -> Ideal:
        return Ideal(self.ambient, self.relations)

    def relations_basis(self):
        return self.ideal.groebner_basis()

    def reduce(self, poly):
        """Normal form of an ambient polynomial modulo the relations."""
        if not self.relations:
            return poly
        return self.ideal.normal_form(poly)

    def is_zero_ring(self) -> bool:
        return self.ideal.is_unit()

    def embed_base(self, poly):
        return self.ambient.map_poly(poly, self.tower.ring)

    def base_generators(self):
        """Images of x_1..x_m in the ambient ring."""
        return self.ambient.gens[: self.tower.dim]

    def with_order(self, order: MonomialOrder) -> "AffineAlgebra":
        tower = self.tower.with_order(order)
        algebra = AffineAlgebra(tower, self.extra_variables, (), self.name)
        relations = tuple(
            algebra.ambient.map_poly(r, self.ambient) for r in self.relations
        )
        return AffineAlgebra(tower, self.extra_variables, relations, self.name)

    def describe(self) -> str:
        ring = self.ambient
        base = f"{self.tower.field}[{', '.join(self.tower.variables)}]"
        if self.is_base:
            return base
        text = f"{base}[{', '.join(self.extra_variables)}]"
        if self.relations:
            text += " / (" + ", ".join(ring.format(r) for r in self.relations) + ")"
        return text


def localize_by_element(algebra: AffineAlgebra, element, name: Optional[str] = None) -> AffineAlgebra:
    """A[u^-1], presented as A[z]/(z*u - 1) with a fresh variable z."""
    reduced = algebra.reduce(algebra.ambient.check(element))
    if not reduced:
        raise InvalidAlgebraError("Cannot localize at an element that is zero in the algebra")
    used = algebra.tower.variables + algebra.extra_variables
    inverse = fresh_name("z", used)
    extended = AffineAlgebra(algebra.tower, algebra.extra_variables + (inverse,))
    lift = extended.ambient
    z = lift.gen(inverse)
    relations = tuple(lift.map_poly(r, algebra.ambient) for r in algebra.relations)
    relations += (z * lift.map_poly(element, algebra.ambient) - 1,)
    return AffineAlgebra(
        algebra.tower, extended.extra_variables, relations, name or algebra.name
    )


def combine_algebras(
    algebras: Sequence[AffineAlgebra], tower: Optional[BaseTower] = None,
    base_renames: Optional[Sequence[Dict[str, str]]] = None,
    force_suffix: bool = False,
) -> Tuple[AffineAlgebra, List[Dict[str, str]]]:
    """Tensor product of algebras over a common base.

    Returns the combined algebra and, per factor, the renaming of the
    factor's variables into the combined ambient ring. Extra variables keep
    their names if they are disjoint across factors; otherwise (or with
    `force_suffix`) the variables of factor i get the suffix ``_i``.
    """
    tower = tower or algebras[0].tower
    base_renames = base_renames or [{} for _ in algebras]
    all_extras = [name for a in algebras for name in a.extra_variables]
    suffix = force_suffix or len(set(all_extras)) != len(all_extras)
    used = set(tower.variables)
    renames: List[Dict[str, str]] = []
    extras: List[str] = []
    for index, algebra in enumerate(algebras, start=1):
        rename = dict(base_renames[index - 1])
        for name in algebra.extra_variables:
            target = fresh_name(f"{name}_{index}" if suffix else name, used)
            used.add(target)
            rename[name] = target
            extras.append(target)
        renames.append(rename)
    combined = AffineAlgebra(tower, tuple(extras))
    relations = []
    for algebra, rename in zip(algebras, renames):
        relations.extend(
            combined.ambient.map_poly(r, algebra.ambient, rename) for r in algebra.relations
        )
    return AffineAlgebra(tower, tuple(extras), tuple(relations)), renames
