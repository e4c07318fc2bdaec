"""
Finitely generated submodules of free modules P^r and ideals of P.
"""

from typing import Optional, Sequence, Tuple

from flatlab.kernel.errors import RankMismatchError, RingMismatchError
from flatlab.kernel.groebner import FreeElem, GroebnerEngine
from flatlab.kernel.monomial_order import ModuleOrder


def zero_vector(ring, rank) -> FreeElem:
    return (ring.zero,) * rank


def unit_vector(ring, rank, position) -> FreeElem:
    vector = [ring.zero] * rank
    vector[position] = ring.one
    return tuple(vector)


def scale_vector(poly, vector) -> FreeElem:
    return tuple(poly * entry for entry in vector)


def add_vectors(first, second) -> FreeElem:
    return tuple(p + q for p, q in zip(first, second))


class Submodule:
    """Submodule of P^rank generated by a list of vectors.

    The Groebner basis is computed on first use and cached.
    """

    def __init__(self, ring, rank: int, generators: Sequence = (), order: Optional[ModuleOrder] = None):
        self.ring = ring
        self.rank = rank
        self.order = order or ModuleOrder(ring.order)
        self._engine = GroebnerEngine(ring, rank, self.order)
        self.generators: Tuple[FreeElem, ...] = tuple(
            v for v in (self._engine.check_vector(g) for g in generators) if any(v)
        )
        self._basis = None

    def __repr__(self):
        return f"Submodule(rank={self.rank}, generators={len(self.generators)})"

    @property
    def engine(self):
        return self._engine

    def groebner_basis(self) -> Tuple[FreeElem, ...]:
        if self._basis is None:
            self._basis = self._engine.groebner_basis(self.generators)
        return self._basis

    def normal_form(self, vector) -> FreeElem:
        return self._engine.normal_form(vector, self.groebner_basis())

    def contains(self, vector) -> bool:
        return not any(self.normal_form(vector))

    def is_zero(self) -> bool:
        return not self.generators

    def is_whole(self) -> bool:
        """True if the submodule is all of P^rank."""
        return all(
            self.contains(unit_vector(self.ring, self.rank, i)) for i in range(self.rank)
        )

    def _check_compatible(self, other):
        if other.ring.sympy_ring != self.ring.sympy_ring:
            raise RingMismatchError("Submodules live over different rings")
        if other.rank != self.rank:
            raise RankMismatchError(
                f"Submodules of free modules of rank {self.rank} and {other.rank}"
            )

    def is_subset(self, other: "Submodule") -> bool:
        self._check_compatible(other)
        return all(other.contains(g) for g in self.generators)

    def equals(self, other: "Submodule") -> bool:
        return self.is_subset(other) and other.is_subset(self)

    def plus(self, other: "Submodule") -> "Submodule":
        self._check_compatible(other)
        return Submodule(self.ring, self.rank, self.generators + other.generators, self.order)

    def with_order(self, order: ModuleOrder) -> "Submodule":
        return Submodule(self.ring, self.rank, self.generators, order)


class Ideal:
    """Ideal of a polynomial ring, handled as a submodule of P^1."""

    def __init__(self, ring, generators: Sequence = (), order: Optional[ModuleOrder] = None):
        self.ring = ring
        self.module = Submodule(ring, 1, [(g,) for g in generators], order)

    def __repr__(self):
        return f"Ideal({[self.ring.format(g) for g in self.generators]})"

    @classmethod
    def from_submodule(cls, module: Submodule):
        if module.rank != 1:
            raise RankMismatchError(f"An ideal is a submodule of rank 1, not {module.rank}")
        return cls(module.ring, [v[0] for v in module.generators], module.order)

    @property
    def generators(self):
        return tuple(v[0] for v in self.module.generators)

    def groebner_basis(self):
        return tuple(v[0] for v in self.module.groebner_basis())

    def normal_form(self, poly):
        return self.module.normal_form((poly,))[0]

    def contains(self, poly) -> bool:
        return self.module.contains((poly,))

    def is_zero(self) -> bool:
        return self.module.is_zero()

    def is_unit(self) -> bool:
        return self.contains(self.ring.one)

    def is_subset(self, other: "Ideal") -> bool:
        return self.module.is_subset(other.module)

    def equals(self, other: "Ideal") -> bool:
        return self.module.equals(other.module)

    def plus(self, other: "Ideal") -> "Ideal":
        return Ideal(self.ring, self.generators + other.generators, self.module.order)

    def with_order(self, order: ModuleOrder) -> "Ideal":
        return Ideal(self.ring, self.generators, order)
