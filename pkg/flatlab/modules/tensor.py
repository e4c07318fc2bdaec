"""
Tensor products of presented modules over the base ring and over the field.

For M = coker(p_M) with g_M generators and N = coker(p_N) with g_N
generators, the generator e_i (x) f_j of M (x) N has index i*g_N + j and the
relations are the columns of p_M (x) Id followed by those of Id (x) p_N.
"""

import itertools
from math import prod
from typing import Dict, List, Sequence

from flatlab.modules.presented_module import PresentedModule
from flatlab.modules.tower import (
    InvalidPowerError,
    TowerMismatchError,
    combine_algebras,
)


def _flat_index(indexes: Sequence[int], ranks: Sequence[int]) -> int:
    flat = 0
    for index, rank in zip(indexes, ranks):
        flat = flat * rank + index
    return flat


def tensor_presentation(
    modules: Sequence[PresentedModule], algebra, renames: Sequence[Dict[str, str]], name=""
) -> PresentedModule:
    """Presentation of the tensor product of `modules` over `algebra`.

    `renames[k]` maps the variables of factor k into the ambient ring of
    `algebra`.
    """
    ring = algebra.ambient
    ranks = [m.rank for m in modules]
    total = prod(ranks)
    relations: List = []
    for k, module in enumerate(modules):
        other_ranges = [range(r) for i, r in enumerate(ranks) if i != k]
        for relation in module.relations:
            mapped = [ring.map_poly(p, module.ring, renames[k]) for p in relation]
            for others in itertools.product(*other_ranges):
                vector = [ring.zero] * total
                for position, entry in enumerate(mapped):
                    if not entry:
                        continue
                    indexes = list(others[:k]) + [position] + list(others[k:])
                    vector[_flat_index(indexes, ranks)] = entry
                relations.append(tuple(vector))
    return PresentedModule(algebra, total, relations, name)


def tensor_over_base(first: PresentedModule, second: PresentedModule, name="") -> PresentedModule:
    """M (x)_R N as a module over A (x)_R B."""
    if not first.tower.same_base(second.tower):
        raise TowerMismatchError("Tensor product of modules over different base rings")
    algebra, renames = combine_algebras([first.algebra, second.algebra], first.tower)
    return tensor_presentation([first, second], algebra, renames, name)


def tensor_power(module: PresentedModule, power: int) -> PresentedModule:
    """T^d M, the d-fold tensor power over the base ring."""
    if power <= 0:
        raise InvalidPowerError(f"Tensor power must be positive, got {power}")
    if power == 1:
        return module
    algebras = [module.algebra] * power
    algebra, renames = combine_algebras(algebras, module.tower)
    name = f"T^{power} {module.name}" if module.name else ""
    return tensor_presentation([module] * power, algebra, renames, name)


def tensor_over_field(first: PresentedModule, second: PresentedModule, name="") -> PresentedModule:
    """M (x)_K N as a module over A (x)_K B.

    The base variables of the second factor are renamed x -> x'.
    """
    if not first.tower.same_base(second.tower):
        raise TowerMismatchError("Tensor product of modules over different base rings")
    tower = first.tower.doubled()
    algebra, renames = combine_algebras(
        [first.algebra, second.algebra],
        tower,
        base_renames=[{}, first.tower.primed_names()],
    )
    return tensor_presentation([first, second], algebra, renames, name)


def diagonal_elements(module: PresentedModule):
    """The sequence x_i - x_i' in the ambient ring of a product over the field."""
    ring = module.ring
    dim = module.tower.dim // 2
    gens = ring.gens
    return tuple(gens[i] - gens[dim + i] for i in range(dim))
