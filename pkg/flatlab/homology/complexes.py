"""
Homology of three-term complexes of presented modules.

A term of a complex is a direct sum of copies of one module, given by its
rank (number of generators) and relation columns. Differentials are lists of
columns: the image of generator k is the k-th column.
"""

from dataclasses import dataclass
from typing import List, Optional, Sequence

from flatlab import FlatlabError
from flatlab.kernel.groebner import FreeElem
from flatlab.kernel.operations import kernel_of_map
from flatlab.kernel.submodule import Submodule, unit_vector
from flatlab.modules.presented_module import PresentedModule
from flatlab.modules.tower import AffineAlgebra


class HomologyError(FlatlabError):
    pass


class InvariantError(HomologyError):
    """A differential does not square to zero."""


@dataclass(frozen=True)
class ComplexTerm:
    rank: int
    relations: Sequence[FreeElem] = ()


@dataclass(frozen=True)
class HomologyResult:
    degree: int
    module: PresentedModule

    @property
    def is_zero(self) -> bool:
        return self.module.is_zero()

    def dict(self):
        return {
            "degree": self.degree,
            "zero": self.is_zero,
            "gens": self.module.rank,
            "relations": len(self.module.relations),
        }


def lift_relations(algebra: AffineAlgebra, term: ComplexTerm) -> List[FreeElem]:
    """Relation columns of a term together with I*e_j."""
    ring = algebra.ambient
    lifted = list(term.relations)
    for relation in algebra.relations:
        for j in range(term.rank):
            vector = [ring.zero] * term.rank
            vector[j] = relation
            lifted.append(tuple(vector))
    return lifted


def apply_map(ring, columns: Sequence[FreeElem], vector: FreeElem, target_rank: int) -> FreeElem:
    """Image of `vector` under the map with the given columns."""
    image = [ring.zero] * target_rank
    for coefficient, column in zip(vector, columns):
        if not coefficient:
            continue
        for i, entry in enumerate(column):
            if entry:
                image[i] = image[i] + coefficient * entry
    return tuple(image)


def homology_at(
    algebra: AffineAlgebra,
    middle: ComplexTerm,
    incoming: Optional[Sequence[FreeElem]],
    outgoing: Optional[Sequence[FreeElem]],
    target: Optional[ComplexTerm],
    degree: int = 0,
) -> HomologyResult:
    """ker(outgoing) / im(incoming) at the middle term, as a presented module.

    `incoming` are the images of the generators of the previous term in the
    middle term, `outgoing` the images of the middle generators in `target`.
    Either may be None for the ends of a complex.
    """
    ring = algebra.ambient
    middle_relations = lift_relations(algebra, middle)
    if outgoing is None or target is None or target.rank == 0:
        cycles = [unit_vector(ring, middle.rank, i) for i in range(middle.rank)]
    else:
        kernel = kernel_of_map(ring, outgoing, target.rank, lift_relations(algebra, target))
        cycles = list(kernel.groebner_basis())
    boundaries = Submodule(ring, middle.rank, list(incoming or ()) + middle_relations)
    reduced_cycles = []
    for cycle in cycles:
        remainder = boundaries.normal_form(cycle)
        if any(remainder):
            reduced_cycles.append(remainder)
    if not reduced_cycles:
        return HomologyResult(degree, PresentedModule(algebra, 0))
    relations = kernel_of_map(ring, reduced_cycles, middle.rank, boundaries.generators)
    module = PresentedModule(algebra, len(reduced_cycles), relations.generators)
    return HomologyResult(degree, module.prune())
