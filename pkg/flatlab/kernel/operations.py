"""
Operations on top of the Groebner engine: reduction, syzygies, elimination,
kernels of module maps, colon modules and saturation.
"""

import logging
from typing import List, Optional, Sequence, Tuple

from flatlab.kernel.errors import (
    InvalidArgumentError,
    NotGroebnerBasisError,
    RankMismatchError,
)
from flatlab.kernel.groebner import FreeElem, GroebnerEngine
from flatlab.kernel.monomial_order import ModuleOrder, ModuleOrderKind, MonomialOrder
from flatlab.kernel.submodule import Ideal, Submodule, unit_vector, zero_vector

logger = logging.getLogger(__name__)


def _as_vector(element):
    if isinstance(element, tuple):
        return element, False
    return (element,), True


def normal_form(element, generators: Sequence, ring, order: Optional[ModuleOrder] = None):
    """Fully reduce a polynomial or vector modulo `generators`.

    The generators are assumed to form a Groebner basis; use `buchberger`
    first otherwise. An empty generator list returns the element unchanged.
    """
    vector, is_poly = _as_vector(element)
    vectors = [_as_vector(g)[0] for g in generators]
    engine = GroebnerEngine(ring, len(vector), order)
    result = engine.normal_form(vector, vectors)
    return result[0] if is_poly else result


def buchberger(generators: Sequence, ring, order: Optional[ModuleOrder] = None):
    """Reduced Groebner basis of polynomials or vectors."""
    if not generators:
        return ()
    first, is_poly = _as_vector(generators[0])
    vectors = [_as_vector(g)[0] for g in generators]
    basis = GroebnerEngine(ring, len(first), order).groebner_basis(vectors)
    if is_poly:
        return tuple(v[0] for v in basis)
    return basis


def syzygies(basis: Sequence[FreeElem], ring, order: Optional[ModuleOrder] = None) -> Submodule:
    """Syzygy module of a Groebner basis g_1..g_n as a submodule of P^n.

    Each S-vector is divided by the basis; a nonzero remainder means the
    input is not a Groebner basis.
    """
    basis = [_as_vector(g)[0] for g in basis]
    count = len(basis)
    if not count:
        return Submodule(ring, 0)
    engine = GroebnerEngine(ring, len(basis[0]), order)
    leads = [engine.leading_term(engine.check_vector(v)) for v in basis]
    if any(lead is None for lead in leads):
        raise InvalidArgumentError("Zero vector in a Groebner basis")
    relations: List[FreeElem] = []
    for i in range(count):
        for j in range(i + 1, count):
            if leads[i].position != leads[j].position:
                continue
            s_vector, multiplier_i, multiplier_j = engine.s_vector(basis[i], basis[j])
            quotients, remainder = engine.divide(s_vector, basis)
            if any(remainder):
                raise NotGroebnerBasisError(
                    f"S-vector of basis elements {i} and {j} does not reduce to zero"
                )
            relation = [-q for q in quotients]
            relation[i] = relation[i] + multiplier_i
            relation[j] = relation[j] - multiplier_j
            relations.append(tuple(relation))
    return Submodule(ring, count, relations)


def eliminate(ideal: Ideal, count: int) -> Ideal:
    """Intersection of `ideal` with the subring of the variables after the first `count`."""
    ring = ideal.ring
    if count < 0 or count > ring.nvars:
        raise InvalidArgumentError(
            f"Cannot eliminate {count} of {ring.nvars} variables"
        )
    order = ModuleOrder(MonomialOrder.elimination(count, ring.order.inner_kind))
    basis = ideal.with_order(order).groebner_basis()
    kept = [g for g in basis if not any(any(m[:count]) for m in g.keys())]
    return Ideal(ring, kept)


def restrict_to_leading(ideal: Ideal, count: int) -> Ideal:
    """Intersection of `ideal` with the subring of the first `count` variables."""
    ring = ideal.ring
    if count < 0 or count > ring.nvars:
        raise InvalidArgumentError(f"Cannot keep {count} of {ring.nvars} variables")
    order = ModuleOrder(MonomialOrder.trailing_elimination(count, ring.order.inner_kind))
    basis = ideal.with_order(order).groebner_basis()
    kept = [g for g in basis if not any(any(m[count:]) for m in g.keys())]
    return Ideal(ring, kept)


def kernel_of_map(
    ring,
    columns: Sequence[FreeElem],
    target_rank: int,
    target_relations: Sequence[FreeElem] = (),
) -> Submodule:
    """Kernel of P^q -> P^p / <target_relations> sending e_k to columns[k].

    Computed from one Groebner basis of the graph [F; Id] together with
    [target_relations; 0] in P^(p+q) under position-over-term; the basis
    elements living in the last q positions generate the kernel.
    """
    source_rank = len(columns)
    for column in columns:
        if len(column) != target_rank:
            raise RankMismatchError(
                f"Column of length {len(column)} for a target of rank {target_rank}"
            )
    for relation in target_relations:
        if len(relation) != target_rank:
            raise RankMismatchError(
                f"Relation of length {len(relation)} for a target of rank {target_rank}"
            )
    if source_rank == 0:
        return Submodule(ring, 0)
    stacked = [
        tuple(column) + unit_vector(ring, source_rank, k)
        for k, column in enumerate(columns)
    ]
    stacked.extend(tuple(r) + zero_vector(ring, source_rank) for r in target_relations)
    order = ModuleOrder(ring.order, ModuleOrderKind.PositionOverTerm)
    engine = GroebnerEngine(ring, target_rank + source_rank, order)
    basis = engine.groebner_basis(stacked)
    kernel = [
        v[target_rank:] for v in basis
        if engine.leading_term(v).position >= target_rank
    ]
    return Submodule(ring, source_rank, kernel)


def quotient(module: Submodule, ideal: Ideal) -> Submodule:
    """The colon module (N : J) = {v in P^r : f*v in N for all f in J}."""
    ring = module.ring
    rank = module.rank
    factors = ideal.generators
    if not factors:
        return Submodule(ring, rank, [unit_vector(ring, rank, i) for i in range(rank)])
    columns = []
    for k in range(rank):
        column: List = []
        for factor in factors:
            block = [ring.zero] * rank
            block[k] = factor
            column.extend(block)
        columns.append(tuple(column))
    relations = []
    for index in range(len(factors)):
        for generator in module.generators:
            relation = [ring.zero] * (rank * len(factors))
            relation[index * rank:(index + 1) * rank] = generator
            relations.append(tuple(relation))
    kernel = kernel_of_map(ring, columns, rank * len(factors), relations)
    return Submodule(ring, rank, kernel.generators, module.order)


def saturation_with_exponent(module: Submodule, ideal: Ideal) -> Tuple[Submodule, int]:
    """Return (N : J^inf, k) where k is the number of strict colon steps."""
    if ideal.is_zero():
        raise InvalidArgumentError("Saturation by the zero ideal")
    current = module
    steps = 0
    while True:
        following = quotient(current, ideal)
        if following.is_subset(current):
            logger.debug("Saturation stabilized after %d steps", steps)
            return current, steps
        current = following
        steps += 1


def saturation(module: Submodule, element) -> Submodule:
    """The saturation (N : f^inf) of a submodule by a nonzero polynomial."""
    if not element:
        raise InvalidArgumentError("Saturation by the zero polynomial")
    return saturation_with_exponent(module, Ideal(module.ring, [element]))[0]


def ideal_saturation(module: Submodule, ideal: Ideal) -> Submodule:
    return saturation_with_exponent(module, ideal)[0]
