"""
Finitely presented modules M = A^g / <relation columns> over affine algebras.
"""

import logging
from typing import List, Optional, Sequence, Tuple

from flatlab.kernel.errors import RankMismatchError
from flatlab.kernel.groebner import FreeElem
from flatlab.kernel.operations import kernel_of_map
from flatlab.kernel.submodule import Ideal, Submodule, unit_vector, zero_vector
from flatlab.modules.tower import AffineAlgebra, TowerMismatchError

logger = logging.getLogger(__name__)


class PresentedModule:
    """Cokernel of a matrix over an affine algebra.

    Arguments:
        algebra: the witness algebra A
        rank: the number of generators g
        relations: relation columns, each a vector of length g over the
            ambient ring of A; entries are stored reduced modulo the
            algebra relations, zero columns are dropped
        name: optional name used in reports
    """

    def __init__(self, algebra: AffineAlgebra, rank: int, relations: Sequence = (), name: str = ""):
        self.algebra = algebra
        self.rank = rank
        self.name = name
        ring = algebra.ambient
        columns = []
        for relation in relations:
            relation = tuple(relation)
            if len(relation) != rank:
                raise RankMismatchError(
                    f"Relation of length {len(relation)} for {rank} generators"
                )
            column = tuple(algebra.reduce(ring.check(p)) for p in relation)
            if any(column):
                columns.append(column)
        self.relations: Tuple[FreeElem, ...] = tuple(columns)
        self._submodule = None

    def __repr__(self):
        return f"PresentedModule({self.name or '?'}: g={self.rank}, p={len(self.relations)})"

    @classmethod
    def free(cls, algebra: AffineAlgebra, rank: int, name=""):
        return cls(algebra, rank, (), name)

    @classmethod
    def cyclic(cls, algebra: AffineAlgebra, ideal_generators: Sequence, name=""):
        """A/J for an ideal J given by generators."""
        return cls(algebra, 1, [(g,) for g in ideal_generators], name)

    @property
    def ring(self):
        return self.algebra.ambient

    @property
    def tower(self):
        return self.algebra.tower

    def lifted_relations(self) -> List[FreeElem]:
        """Relation columns together with I*e_j, generating the lift of the relations in P^g."""
        ring = self.ring
        lifted = list(self.relations)
        for relation in self.algebra.relations:
            for j in range(self.rank):
                vector = [ring.zero] * self.rank
                vector[j] = relation
                lifted.append(tuple(vector))
        return lifted

    def submodule(self) -> Submodule:
        """The lifted relation module N with M = P^g / N."""
        if self._submodule is None:
            self._submodule = Submodule(self.ring, self.rank, self.lifted_relations())
        return self._submodule

    def contains_zero_class(self, vector) -> bool:
        """True if the element given by `vector` is zero in M."""
        return self.submodule().contains(vector)

    def normal_form(self, vector) -> FreeElem:
        return self.submodule().normal_form(vector)

    def is_zero(self) -> bool:
        if self.rank == 0:
            return True
        return self.submodule().is_whole()

    def is_free_presentation(self) -> bool:
        return not self.relations and self.algebra.is_base

    def generator(self, index) -> FreeElem:
        return unit_vector(self.ring, self.rank, index)

    def annihilator(self) -> Ideal:
        """Ann_A(M) as an ideal of the ambient ring containing I."""
        ring = self.ring
        if self.rank == 0:
            return Ideal(ring, [ring.one])
        column = []
        for j in range(self.rank):
            column.extend(unit_vector(ring, self.rank, j))
        lifted = self.lifted_relations()
        target_relations = []
        for j in range(self.rank):
            for relation in lifted:
                vector = [ring.zero] * (self.rank * self.rank)
                vector[j * self.rank:(j + 1) * self.rank] = relation
                target_relations.append(tuple(vector))
        kernel = kernel_of_map(ring, [tuple(column)], self.rank * self.rank, target_relations)
        return Ideal(ring, [v[0] for v in kernel.generators] + list(self.algebra.relations))

    def direct_sum(self, other: "PresentedModule", name="") -> "PresentedModule":
        if other.algebra != self.algebra:
            raise TowerMismatchError("Direct sum of modules over different algebras")
        ring = self.ring
        relations = [r + zero_vector(ring, other.rank) for r in self.relations]
        relations += [zero_vector(ring, self.rank) + r for r in other.relations]
        return PresentedModule(self.algebra, self.rank + other.rank, relations, name)

    def prune(self) -> "PresentedModule":
        """Remove generators that a relation with a constant entry expresses by the others.

        Only nonzero constants of the coefficient field are used as pivots.
        Entries that are units of the algebra without being constants, such
        as z in a localization with z*s - 1, are left alone, so the result
        need not be a minimal presentation.
        """
        columns = [list(c) for c in self.relations]
        alive = list(range(self.rank))
        while True:
            pivot = _find_constant_entry(columns)
            if pivot is None:
                break
            k, j = pivot
            pivot_column = columns[k]
            constant = next(iter(pivot_column[j].values()))
            reduced = []
            for index, column in enumerate(columns):
                if index == k:
                    continue
                if column[j]:
                    factor = column[j].quo_ground(constant)
                    column = [c - factor * p for c, p in zip(column, pivot_column)]
                reduced.append(column[:j] + column[j + 1:])
            columns = reduced
            del alive[j]
        pruned = PresentedModule(self.algebra, len(alive), [tuple(c) for c in columns], self.name)
        if pruned.rank != self.rank:
            logger.debug("Pruned %d generators of %r", self.rank - pruned.rank, self)
        return pruned

    def rename(self, name):
        module = PresentedModule.__new__(PresentedModule)
        module.__dict__.update(self.__dict__)
        module.name = name
        return module

    def canonical_text(self) -> str:
        ring = self.ring
        text = f"over {self.algebra.describe()} : gens {self.rank}"
        for relation in self.relations:
            text += " ; rel " + ring.format_vector(relation)
        return text

    def dict(self):
        ring = self.ring
        return {
            "name": self.name,
            "algebra": self.algebra.describe(),
            "gens": self.rank,
            "relations": [[ring.format(p) for p in r] for r in self.relations],
        }


def _find_constant_entry(columns) -> Optional[Tuple[int, int]]:
    for k, column in enumerate(columns):
        for j, entry in enumerate(column):
            if entry and entry.is_ground:
                return k, j
    return None


def supports_intersect(first: PresentedModule, second: PresentedModule) -> bool:
    """True if Supp M and Supp N meet, i.e. Ann M + Ann N is not the unit ideal."""
    if first.algebra != second.algebra:
        raise TowerMismatchError("Support comparison needs modules over the same algebra")
    return not first.annihilator().plus(second.annihilator()).is_unit()
