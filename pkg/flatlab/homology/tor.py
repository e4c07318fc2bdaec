"""
Tor over the base ring R = K[x_1..x_m].

Two routes are available: the diagonal route computes Tor_j^R(M, N) as the
Koszul homology of the diagonal sequence x_i - x_i' on M (x)_K N, the
resolution route tensors a free resolution of M over R with N.
"""

import enum
import logging
from dataclasses import dataclass, field
from typing import List, Optional

from flatlab.homology.complexes import ComplexTerm, HomologyError, homology_at
from flatlab.homology.koszul import KoszulComplex
from flatlab.kernel.groebner import FreeElem
from flatlab.kernel.operations import syzygies
from flatlab.kernel.submodule import Submodule
from flatlab.modules.presented_module import PresentedModule
from flatlab.modules.tensor import diagonal_elements, tensor_over_field

logger = logging.getLogger(__name__)


class WitnessMismatchError(HomologyError):
    pass


class TorMethod(str, enum.Enum):
    Diagonal = "diagonal"
    Resolution = "resolution"


@dataclass(frozen=True)
class TorResult:
    degree: int
    module: PresentedModule
    method: TorMethod

    @property
    def is_zero(self) -> bool:
        return self.module.is_zero()

    def dict(self):
        return {
            "degree": self.degree,
            "method": self.method.value,
            "zero": self.is_zero,
            "gens": self.module.rank,
            "relations": len(self.module.relations),
        }


def tor_diagonal(first: PresentedModule, second: PresentedModule, degree: int) -> TorResult:
    """Tor_degree^R(M, N) via the diagonal Koszul complex over A (x)_K B."""
    product = tensor_over_field(first, second)
    if degree < 0 or degree > first.tower.dim:
        return TorResult(degree, PresentedModule(product.algebra, 0), TorMethod.Diagonal)
    complex_ = KoszulComplex(diagonal_elements(product), product)
    return TorResult(degree, complex_.homology(degree).module, TorMethod.Diagonal)


@dataclass
class FreeResolution:
    """F_len -> ... -> F_1 -> F_0 -> M -> 0 over the base ring.

    `differentials[i]` holds the columns of d_(i+1): F_(i+1) -> F_i.
    """

    module: PresentedModule
    ranks: List[int] = field(default_factory=list)
    differentials: List[List[FreeElem]] = field(default_factory=list)

    @property
    def length(self):
        return len(self.differentials)


def free_resolution(module: PresentedModule, max_length: Optional[int] = None) -> FreeResolution:
    """Free resolution of a module presented over R by iterated syzygies.

    Stops when a syzygy module vanishes, or after `max_length` steps
    (truncated; by Hilbert's syzygy theorem m + 1 steps suffice for Tor).
    """
    if not module.algebra.is_base:
        raise WitnessMismatchError("Free resolutions are computed for modules over R only")
    ring = module.ring
    if max_length is None:
        max_length = module.tower.dim + 1
    resolution = FreeResolution(module, [module.rank])
    current = Submodule(ring, module.rank, module.relations)
    while resolution.length < max_length and not current.is_zero():
        basis = list(current.groebner_basis())
        resolution.differentials.append(basis)
        resolution.ranks.append(len(basis))
        current = syzygies(basis, ring)
    logger.debug("Free resolution with ranks %s", resolution.ranks)
    return resolution


def _tensor_columns(columns: List[FreeElem], source_ring, target_rank: int, module):
    """Columns of d (x) Id_N from F_source (x) N to F_target (x) N, over N's ambient ring."""
    ring = module.ring
    g = module.rank
    result = []
    for column in columns:
        mapped = [ring.map_poly(p, source_ring) for p in column]
        for j in range(g):
            vector = [ring.zero] * (target_rank * g)
            for i, entry in enumerate(mapped):
                if entry:
                    vector[i * g + j] = entry
            result.append(tuple(vector))
    return result


def _term(rank: int, module: PresentedModule) -> ComplexTerm:
    g = module.rank
    ring = module.ring
    relations = []
    for block in range(rank):
        for relation in module.relations:
            vector = [ring.zero] * (rank * g)
            vector[block * g:(block + 1) * g] = relation
            relations.append(tuple(vector))
    return ComplexTerm(rank * g, tuple(relations))


def tor_resolution(first: PresentedModule, second: PresentedModule, degree: int) -> TorResult:
    """Tor_degree^R(M, N) as homology of F (x)_R N for a resolution F of M."""
    if not first.algebra.is_base:
        raise WitnessMismatchError("The resolution route needs the first module over R")
    if not first.tower.same_base(second.tower):
        raise WitnessMismatchError("Modules over different base rings")
    algebra = second.algebra
    if degree < 0 or degree > first.tower.dim:
        return TorResult(degree, PresentedModule(algebra, 0), TorMethod.Resolution)
    resolution = free_resolution(first, degree + 1)
    source_ring = first.ring

    def tensored(index):
        if index >= resolution.length:
            return None
        return _tensor_columns(
            resolution.differentials[index], source_ring, resolution.ranks[index], second
        )

    middle_rank = resolution.ranks[degree] if degree < len(resolution.ranks) else 0
    if middle_rank == 0:
        return TorResult(degree, PresentedModule(algebra, 0), TorMethod.Resolution)
    incoming = tensored(degree)
    outgoing = tensored(degree - 1) if degree > 0 else None
    target = _term(resolution.ranks[degree - 1], second) if degree > 0 else None
    result = homology_at(
        algebra, _term(middle_rank, second), incoming, outgoing, target, degree
    )
    return TorResult(degree, result.module, TorMethod.Resolution)


def tor(first: PresentedModule, second: PresentedModule, degree: int, method=TorMethod.Diagonal) -> TorResult:
    if TorMethod(method) == TorMethod.Resolution:
        return tor_resolution(first, second, degree)
    return tor_diagonal(first, second, degree)
