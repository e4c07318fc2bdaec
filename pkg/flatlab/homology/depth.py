"""
Depth at the irrelevant ideal and codepth over the base ring, both read off
Koszul homology.
"""

import enum
from typing import Union

from flatlab.homology.koszul import KoszulComplex
from flatlab.kernel.operations import ideal_saturation
from flatlab.kernel.submodule import Ideal
from flatlab.modules.presented_module import PresentedModule


class Unbounded(str, enum.Enum):
    PlusInfinity = "+infinity"
    MinusInfinity = "-infinity"


Bound = Union[int, Unbounded]


def format_bound(value: Bound) -> str:
    if isinstance(value, Unbounded):
        return value.value
    return str(value)


def highest_nonzero_homology(complex_: KoszulComplex):
    """The largest i with H_i != 0, or None if all vanish."""
    for degree in range(complex_.length, -1, -1):
        if not complex_.homology(degree).is_zero:
            return degree
    return None


def depth_at_irrelevant(module: PresentedModule) -> Bound:
    """depth of M at the ideal generated by all ambient variables.

    Equal to e - max{i : H_i(y; M) != 0} for the e ambient variables y;
    +infinity when M = 0.
    """
    complex_ = KoszulComplex(module.ring.gens, module)
    highest = highest_nonzero_homology(complex_)
    if highest is None:
        return Unbounded.PlusInfinity
    return complex_.length - highest


def codepth(module: PresentedModule) -> Bound:
    """max{i : H_i(x; M) != 0} for the base variables x; -infinity when all vanish."""
    complex_ = KoszulComplex(module.algebra.base_generators(), module)
    highest = highest_nonzero_homology(complex_)
    if highest is None:
        return Unbounded.MinusInfinity
    return highest


def is_finite_length(module: PresentedModule) -> bool:
    """True if M is killed by a power of the ideal of all ambient variables."""
    ring = module.ring
    annihilator = module.annihilator()
    saturated = ideal_saturation(annihilator.module, Ideal(ring, ring.gens))
    return saturated.is_whole()
