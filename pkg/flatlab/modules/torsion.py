"""
R-torsion of presented modules.

For M = P^g/N with P = K[x, y] the torsion submodule T(M) consists of the
elements killed by a nonzero polynomial in the base variables x. It is
computed from one Groebner basis of N under an order with the y block and
the position dominating x: with h the product of the leading coefficients
in K[x], T(M) = (N : h^inf)/N, and h^k with k the number of colon steps
annihilates T(M).
"""

import logging
import weakref
from dataclasses import dataclass
from typing import Optional, Tuple

from flatlab.kernel.groebner import FreeElem, GroebnerEngine
from flatlab.kernel.monomial_order import ModuleOrder, ModuleOrderKind, MonomialOrder
from flatlab.kernel.operations import (
    kernel_of_map,
    restrict_to_leading,
    saturation_with_exponent,
)
from flatlab.kernel.submodule import Ideal
from flatlab.modules.presented_module import PresentedModule

logger = logging.getLogger(__name__)

_decompositions: "weakref.WeakKeyDictionary" = weakref.WeakKeyDictionary()


@dataclass(frozen=True)
class TorsionDecomposition:
    """Torsion data of a module M = P^g/N.

    Attributes:
        torsion_generators: vectors of P^g, reduced modulo N, whose classes
            generate T(M); empty if M is torsion-free
        base_factor: the polynomial h in the base variables
        exponent: the number k of colon steps, h^k kills T(M)
    """

    module: PresentedModule
    torsion_generators: Tuple[FreeElem, ...]
    base_factor: object
    exponent: int

    @property
    def is_torsion_free(self) -> bool:
        return not self.torsion_generators

    @property
    def certificate(self):
        """The nonzero base polynomial h^k annihilating T(M)."""
        return self.base_factor ** self.exponent


def leading_base_coefficients(module: PresentedModule):
    """Distinct primitive non-constant leading coefficients in K[x] of the basis of N."""
    ring = module.ring
    base_dim = module.tower.dim
    order = ModuleOrder(
        MonomialOrder.trailing_elimination(base_dim, ring.order.inner_kind),
        ModuleOrderKind.PositionOverTerm
    )
    engine = GroebnerEngine(ring, module.rank, order)
    basis = module.submodule().with_order(order).groebner_basis()
    factors = []
    for vector in basis:
        lead = engine.leading_term(vector)
        fibre_monomial = lead.monomial[base_dim:]
        coefficient = ring.from_terms(
            {
                monomial: value
                for monomial, value in vector[lead.position].items()
                if monomial[base_dim:] == fibre_monomial
            }
        )
        coefficient = ring.make_primitive(coefficient)
        if coefficient.is_ground or coefficient in factors:
            continue
        factors.append(coefficient)
    return factors


def torsion_submodule(module: PresentedModule) -> TorsionDecomposition:
    """Compute T(M) together with an annihilating base polynomial."""
    cached = _decompositions.get(module)
    if cached is not None:
        return cached
    ring = module.ring
    if module.rank == 0:
        result = TorsionDecomposition(module, (), ring.one, 0)
        _decompositions[module] = result
        return result
    factors = leading_base_coefficients(module)
    relations = module.submodule()
    if not factors:
        result = TorsionDecomposition(module, (), ring.one, 0)
    else:
        base_factor = ring.one
        for factor in factors:
            base_factor = base_factor * factor
        saturated, exponent = saturation_with_exponent(relations, Ideal(ring, [base_factor]))
        generators = []
        for vector in saturated.groebner_basis():
            remainder = relations.normal_form(vector)
            if any(remainder):
                generators.append(remainder)
        result = TorsionDecomposition(module, tuple(generators), base_factor, exponent)
        logger.debug(
            "Torsion of %r: %d generators, exponent %d",
            module, len(generators), exponent,
        )
    _decompositions[module] = result
    return result


def is_torsion_free(module: PresentedModule) -> bool:
    return torsion_submodule(module).is_torsion_free


def torsion_quotient(module: PresentedModule, prune: bool = True) -> PresentedModule:
    """The torsion-free quotient M/T(M), on the same generators unless pruned."""
    decomposition = torsion_submodule(module)
    quotient = PresentedModule(
        module.algebra,
        module.rank,
        module.relations + decomposition.torsion_generators,
        module.name and f"{module.name}/T",
    )
    return quotient.prune() if prune else quotient


def torsion_module(module: PresentedModule) -> PresentedModule:
    """T(M) as a presented module on the torsion generators."""
    decomposition = torsion_submodule(module)
    generators = decomposition.torsion_generators
    if not generators:
        return PresentedModule(module.algebra, 0, (), module.name and f"T({module.name})")
    relations = kernel_of_map(
        module.ring, generators, module.rank, module.lifted_relations()
    )
    return PresentedModule(
        module.algebra,
        len(generators),
        relations.generators,
        module.name and f"T({module.name})",
    )


def base_annihilator(module: PresentedModule, element: FreeElem) -> Ideal:
    """Ann_R(m) = (N : m) intersected with K[x], as an ideal of the ambient ring."""
    colon = kernel_of_map(module.ring, [tuple(element)], module.rank, module.lifted_relations())
    ideal = Ideal(module.ring, [v[0] for v in colon.generators])
    return restrict_to_leading(ideal, module.tower.dim)


def annihilating_base_element(module: PresentedModule, element: FreeElem) -> Optional[object]:
    """A nonzero u in R with u*m = 0, of least total degree; None if m is not torsion."""
    ring = module.ring
    candidates = [g for g in base_annihilator(module, element).generators if g]
    if not candidates:
        return None
    return min(candidates, key=ring.degree)


@dataclass(frozen=True)
class TorsionWitnessPair:
    element: FreeElem
    annihilator: object


def torsion_witness(module: PresentedModule) -> Optional[TorsionWitnessPair]:
    """The first torsion generator with an annihilating base element."""
    for generator in torsion_submodule(module).torsion_generators:
        annihilator = annihilating_base_element(module, generator)
        if annihilator is not None:
            return TorsionWitnessPair(generator, annihilator)
    return None
