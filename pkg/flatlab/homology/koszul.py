"""
Koszul complexes K(x_1..x_e; M) of presented modules.

The term of degree i is M^C(e,i), indexed by the i-subsets of {1..e} in
lexicographic order. The differential sends e_S (x) m to
sum_k (-1)^k x_{s_k} e_{S - s_k} (x) m.
"""

import itertools
import logging
from functools import cached_property
from math import comb
from typing import Dict, List, Sequence, Tuple

from flatlab.homology.complexes import (
    ComplexTerm,
    HomologyResult,
    InvariantError,
    apply_map,
    homology_at,
)
from flatlab.kernel.groebner import FreeElem
from flatlab.modules.presented_module import PresentedModule

logger = logging.getLogger(__name__)


class KoszulComplex:
    """Koszul complex of a sequence of ambient polynomials on a module."""

    def __init__(self, sequence: Sequence, module: PresentedModule):
        self.module = module
        self.sequence = tuple(module.ring.check(x) for x in sequence)
        self._check_square_zero()

    @property
    def length(self) -> int:
        return len(self.sequence)

    def subsets(self, degree) -> List[Tuple[int, ...]]:
        return list(itertools.combinations(range(self.length), degree))

    @cached_property
    def _subset_indexes(self) -> Dict[Tuple[int, ...], int]:
        indexes = {}
        for degree in range(self.length + 1):
            for index, subset in enumerate(self.subsets(degree)):
                indexes[subset] = index
        return indexes

    def rank(self, degree) -> int:
        if degree < 0 or degree > self.length:
            return 0
        return comb(self.length, degree) * self.module.rank

    def term(self, degree) -> ComplexTerm:
        """M^C(e,degree) with the relations of M in every block."""
        g = self.module.rank
        rank = self.rank(degree)
        ring = self.module.ring
        relations = []
        for block in range(comb(self.length, degree) if 0 <= degree <= self.length else 0):
            for relation in self.module.relations:
                vector = [ring.zero] * rank
                vector[block * g:(block + 1) * g] = relation
                relations.append(tuple(vector))
        return ComplexTerm(rank, tuple(relations))

    def differential(self, degree) -> List[FreeElem]:
        """Columns of d_degree: K_degree -> K_(degree-1), for 1 <= degree <= e."""
        ring = self.module.ring
        g = self.module.rank
        target_rank = self.rank(degree - 1)
        columns = []
        for subset in self.subsets(degree):
            images = []
            for k, removed in enumerate(subset):
                face = subset[:k] + subset[k + 1:]
                sign = 1 if k % 2 == 0 else -1
                images.append((self._subset_indexes[face], sign * self.sequence[removed]))
            for j in range(g):
                column = [ring.zero] * target_rank
                for face_index, entry in images:
                    column[face_index * g + j] = entry
                columns.append(tuple(column))
        return columns

    def _check_square_zero(self):
        ring = self.module.ring
        for degree in range(2, self.length + 1):
            upper = self.differential(degree)
            lower = self.differential(degree - 1)
            target_rank = self.rank(degree - 2)
            for column in upper:
                if any(apply_map(ring, lower, column, target_rank)):
                    raise InvariantError(
                        f"Koszul differential does not square to zero in degree {degree}"
                    )

    def homology(self, degree) -> HomologyResult:
        """H_degree(x; M); zero outside 0..e."""
        algebra = self.module.algebra
        if degree < 0 or degree > self.length:
            return HomologyResult(degree, PresentedModule(algebra, 0))
        incoming = self.differential(degree + 1) if degree < self.length else None
        outgoing = self.differential(degree) if degree > 0 else None
        target = self.term(degree - 1) if degree > 0 else None
        result = homology_at(
            algebra, self.term(degree), incoming, outgoing, target, degree
        )
        logger.debug(
            "Koszul homology in degree %d: %d generators", degree, result.module.rank
        )
        return result


def koszul_homology(sequence: Sequence, module: PresentedModule, degree: int) -> HomologyResult:
    return KoszulComplex(sequence, module).homology(degree)
