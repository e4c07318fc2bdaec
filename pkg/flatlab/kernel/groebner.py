"""
Buchberger's algorithm for submodules of free modules P^r over a polynomial
ring P, with the Gebauer-Moeller pair criteria, normal or sugar selection,
and full reduction. An ideal is handled as a submodule of P^1.

Elements of P^r are tuples of r polynomials of the same sympy ring.
"""

import logging
import os
from contextlib import contextmanager
from contextvars import ContextVar
from dataclasses import dataclass
from typing import List, NamedTuple, Optional, Sequence, Set, Tuple

from sympy.polys.monomials import (
    monomial_div,
    monomial_divides,
    monomial_lcm,
    monomial_mul,
)

from flatlab.kernel.errors import (
    InvalidArgumentError,
    RankMismatchError,
    ResourceLimitError,
)
from flatlab.kernel.monomial_order import ModuleOrder, ModuleOrderKind, Monomial

FreeElem = Tuple  # tuple of polynomials

LIMIT_ENV = "FLATLAB_GB_LIMIT"

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class GroebnerConfig:
    """Settings of the Groebner engine.

    `sugar` selects pairs by sugar degree instead of the degree of the lcm.
    `pair_limit` bounds the number of processed pairs of a single basis
    computation; exceeding it raises ResourceLimitError.
    """

    sugar: bool = False
    pair_limit: Optional[int] = None

    @classmethod
    def from_environment(cls, sugar=False):
        value = os.environ.get(LIMIT_ENV)
        if not value:
            return cls(sugar=sugar)
        try:
            limit = int(value)
        except ValueError:
            raise InvalidArgumentError(f"{LIMIT_ENV} must be an integer, got '{value}'")
        if limit <= 0:
            raise InvalidArgumentError(f"{LIMIT_ENV} must be positive, got {limit}")
        return cls(sugar=sugar, pair_limit=limit)


@dataclass
class GroebnerStats:
    bases: int = 0
    pairs: int = 0
    zero_reductions: int = 0
    max_terms: int = 0

    def dict(self):
        return {
            "bases": self.bases,
            "pairs": self.pairs,
            "zero_reductions": self.zero_reductions,
            "max_terms": self.max_terms,
        }


_current_stats: ContextVar[Optional[GroebnerStats]] = ContextVar(
    "flatlab_groebner_stats", default=None
)
_current_config: ContextVar[Optional[GroebnerConfig]] = ContextVar(
    "flatlab_groebner_config", default=None
)


@contextmanager
def collect_stats():
    """Collect engine statistics of all basis computations in the block."""
    stats = GroebnerStats()
    token = _current_stats.set(stats)
    try:
        yield stats
    finally:
        _current_stats.reset(token)


@contextmanager
def use_config(config: GroebnerConfig):
    token = _current_config.set(config)
    try:
        yield config
    finally:
        _current_config.reset(token)


def current_config() -> GroebnerConfig:
    config = _current_config.get()
    if config is None:
        config = GroebnerConfig.from_environment()
    return config


class LeadingTerm(NamedTuple):
    position: int
    monomial: Monomial
    coefficient: object


@dataclass
class _Element:
    vector: FreeElem
    lead: LeadingTerm
    sugar: int


def vector_terms(vector):
    for position, poly in enumerate(vector):
        for monomial, coefficient in poly.items():
            yield position, monomial, coefficient


def is_zero_vector(vector):
    return not any(vector)


def term_count(vector):
    return sum(len(poly) for poly in vector)


class GroebnerEngine:
    """Groebner basis computations in P^rank for a fixed module order.

    Arguments:
        ring: the PolynomialRing P
        rank: rank of the free module
        order: the term order, position-over-term with the ring's order
            if not given
        config: engine settings, the active configuration if not given
    """

    def __init__(self, ring, rank: int, order: Optional[ModuleOrder] = None, config=None):
        if rank < 0:
            raise InvalidArgumentError(f"Negative rank {rank}")
        self.ring = ring
        self.rank = rank
        self.order = order or ModuleOrder(ring.order)
        self.config = config or current_config()
        self._domain = ring.field.domain

    def check_vector(self, vector) -> FreeElem:
        vector = tuple(vector)
        if len(vector) != self.rank:
            raise RankMismatchError(
                f"Vector of length {len(vector)} in a free module of rank {self.rank}"
            )
        for poly in vector:
            self.ring.check(poly)
        return vector

    def leading_term(self, vector) -> Optional[LeadingTerm]:
        best = None
        best_key = None
        position_first = self.order.kind == ModuleOrderKind.PositionOverTerm
        for position, poly in enumerate(vector):
            if not poly:
                continue
            for monomial, coefficient in poly.items():
                key = self.order.key(position, monomial)
                if best_key is None or key > best_key:
                    best_key = key
                    best = LeadingTerm(position, monomial, coefficient)
            if position_first:
                break
        return best

    def sorted_terms(self, vector):
        """Terms (position, monomial, coefficient) in descending order."""
        return sorted(
            vector_terms(vector),
            key=lambda term: self.order.key(term[0], term[1]),
            reverse=True,
        )

    def _add_multiple(self, vector, other, monomial, coefficient):
        term = (monomial, coefficient)
        return tuple(
            poly + other_poly.mul_term(term) if other_poly else poly
            for poly, other_poly in zip(vector, other)
        )

    def _find_reducer(self, lead, elements: Sequence[_Element]) -> Optional[int]:
        for index, element in enumerate(elements):
            if element.lead.position == lead.position and monomial_divides(
                element.lead.monomial, lead.monomial
            ):
                return index
        return None

    def _reduce(self, vector, elements: Sequence[_Element], quotients=None):
        """Fully reduce `vector`; reducers are tried lowest index first.

        If `quotients` is a list it receives the multipliers of the reducers.
        """
        rest = list(vector)
        remainder = [self.ring.zero] * self.rank
        while True:
            lead = self.leading_term(rest)
            if lead is None:
                return tuple(remainder)
            index = self._find_reducer(lead, elements)
            if index is None:
                term = self.ring.term(lead.monomial, lead.coefficient)
                remainder[lead.position] = remainder[lead.position] + term
                rest[lead.position] = rest[lead.position] - term
                continue
            element = elements[index]
            factor_monomial = monomial_div(lead.monomial, element.lead.monomial)
            factor = self._domain.quo(lead.coefficient, element.lead.coefficient)
            rest = list(self._add_multiple(rest, element.vector, factor_monomial, -factor))
            if quotients is not None:
                quotients[index] = quotients[index] + self.ring.term(factor_monomial, factor)

    def _make_element(self, vector, sugar=None) -> _Element:
        vector = self._make_primitive(vector)
        if sugar is None:
            sugar = max(sum(monomial) for _, monomial, _ in vector_terms(vector))
        return _Element(vector, self.leading_term(vector), sugar)

    def _make_primitive(self, vector):
        coefficients = [coefficient for _, _, coefficient in self.sorted_terms(vector)]
        content = self.ring.field.content(coefficients)
        return tuple(poly.quo_ground(content) if poly else poly for poly in vector)

    def _make_monic(self, vector):
        lead = self.leading_term(vector)
        return tuple(
            poly.quo_ground(lead.coefficient) if poly else poly for poly in vector
        )

    def _elements(self, basis):
        return [self._make_element(self.check_vector(v)) for v in basis if any(v)]

    def normal_form(self, vector, basis: Sequence[FreeElem]) -> FreeElem:
        """Fully reduced remainder of `vector` modulo `basis`.

        With an empty basis the vector is returned unchanged.
        """
        vector = self.check_vector(vector)
        elements = self._elements(basis)
        if not elements:
            return vector
        return self._reduce(vector, elements)

    def divide(self, vector, basis: Sequence[FreeElem]):
        """Return (quotients, remainder) with vector = sum q_i b_i + remainder.

        Reduction uses the basis vectors as given (not made primitive).
        """
        vector = self.check_vector(vector)
        elements = []
        for v in basis:
            v = self.check_vector(v)
            lead = self.leading_term(v)
            elements.append(_Element(v, lead, 0) if lead else None)
        quotients = [self.ring.zero] * len(elements)
        live = [e for e in elements if e is not None]
        live_indexes = [i for i, e in enumerate(elements) if e is not None]
        live_quotients = [self.ring.zero] * len(live)
        remainder = self._reduce(vector, live, live_quotients)
        for i, quotient in zip(live_indexes, live_quotients):
            quotients[i] = quotient
        return quotients, remainder

    def s_vector(self, first: FreeElem, second: FreeElem):
        """S-vector of two vectors with leading terms at the same position.

        Returns (s_vector, first_multiplier, second_multiplier) such that
        s_vector = first_multiplier*first - second_multiplier*second.
        """
        lead1 = self.leading_term(first)
        lead2 = self.leading_term(second)
        if lead1.position != lead2.position:
            raise InvalidArgumentError("S-vector of leading terms at different positions")
        lcm = monomial_lcm(lead1.monomial, lead2.monomial)
        one = self._domain.one
        multiplier1 = self.ring.term(
            monomial_div(lcm, lead1.monomial), self._domain.quo(one, lead1.coefficient)
        )
        multiplier2 = self.ring.term(
            monomial_div(lcm, lead2.monomial), self._domain.quo(one, lead2.coefficient)
        )
        vector = tuple(
            multiplier1 * p - multiplier2 * q for p, q in zip(first, second)
        )
        return vector, multiplier1, multiplier2

    def _coprime(self, monomial1, monomial2):
        # product criterion, valid for ideals only
        return self.rank == 1 and monomial_mul(monomial1, monomial2) == monomial_lcm(
            monomial1, monomial2
        )

    def _pair_key(self, pair, elements):
        i, j = pair
        lead_i, lead_j = elements[i].lead, elements[j].lead
        lcm = monomial_lcm(lead_i.monomial, lead_j.monomial)
        degree = sum(lcm)
        if self.config.sugar:
            sugar = max(
                elements[i].sugar + degree - sum(lead_i.monomial),
                elements[j].sugar + degree - sum(lead_j.monomial),
            )
            return sugar, degree, i, j
        return degree, i, j

    def _update(self, basis: Set[int], pairs: Set[Tuple[int, int]], new, elements):
        lead_h = elements[new].lead
        monomial_h = lead_h.monomial
        same_position = [
            index for index in sorted(basis)
            if elements[index].lead.position == lead_h.position
        ]

        candidates = list(same_position)
        kept: List[int] = []
        while candidates:
            index = candidates.pop()
            monomial_g = elements[index].lead.monomial
            lcm_hg = monomial_lcm(monomial_h, monomial_g)

            def lcm_divides(other):
                lcm = monomial_lcm(monomial_h, elements[other].lead.monomial)
                return monomial_divides(lcm, lcm_hg)

            if self._coprime(monomial_h, monomial_g) or (
                not any(lcm_divides(other) for other in candidates)
                and not any(lcm_divides(other) for other in kept)
            ):
                kept.append(index)

        new_pairs = {
            (min(index, new), max(index, new))
            for index in kept
            if not self._coprime(monomial_h, elements[index].lead.monomial)
        }

        remaining_pairs = set()
        for first, second in pairs:
            lead1, lead2 = elements[first].lead, elements[second].lead
            if lead1.position != lead_h.position:
                remaining_pairs.add((first, second))
                continue
            lcm12 = monomial_lcm(lead1.monomial, lead2.monomial)
            if (
                not monomial_divides(monomial_h, lcm12)
                or monomial_lcm(lead1.monomial, monomial_h) == lcm12
                or monomial_lcm(lead2.monomial, monomial_h) == lcm12
            ):
                remaining_pairs.add((first, second))
        remaining_pairs |= new_pairs

        remaining_basis = {
            index for index in basis
            if not (
                elements[index].lead.position == lead_h.position
                and monomial_divides(monomial_h, elements[index].lead.monomial)
            )
        }
        remaining_basis.add(new)
        return remaining_basis, remaining_pairs

    def groebner_basis(self, generators: Sequence[FreeElem]) -> Tuple[FreeElem, ...]:
        """Reduced Groebner basis of the submodule generated by `generators`.

        The basis is monic and sorted by descending leading term.
        """
        stats = _current_stats.get()
        if stats is not None:
            stats.bases += 1
        vectors = [self.check_vector(g) for g in generators]
        vectors = [v for v in vectors if any(v)]
        if not vectors:
            return ()
        vectors.sort(key=lambda v: self._lead_key(v))

        elements: List[_Element] = []
        basis: Set[int] = set()
        pairs: Set[Tuple[int, int]] = set()

        def add(vector, sugar=None):
            nonlocal basis, pairs
            elements.append(self._make_element(vector, sugar))
            if stats is not None:
                stats.max_terms = max(stats.max_terms, term_count(vector))
            basis, pairs = self._update(basis, pairs, len(elements) - 1, elements)

        for vector in vectors:
            current = [elements[i] for i in sorted(basis)]
            remainder = self._reduce(vector, current) if current else vector
            if any(remainder):
                add(remainder)

        processed = 0
        while pairs:
            if self.rank == 1 and self._contains_unit(basis, elements):
                break
            pair = min(pairs, key=lambda p: self._pair_key(p, elements))
            pairs.remove(pair)
            processed += 1
            if stats is not None:
                stats.pairs += 1
            if self.config.pair_limit is not None and processed > self.config.pair_limit:
                raise ResourceLimitError(
                    f"Groebner basis computation exceeded {self.config.pair_limit} pairs"
                )
            first, second = elements[pair[0]], elements[pair[1]]
            s_vector, _, _ = self.s_vector(first.vector, second.vector)
            sugar = self._pair_key(pair, elements)[0] if self.config.sugar else None
            remainder = self._reduce(s_vector, [elements[i] for i in sorted(basis)])
            if not any(remainder):
                if stats is not None:
                    stats.zero_reductions += 1
                continue
            add(remainder, sugar)

        logger.debug(
            "Groebner basis in rank %d: %d elements after %d pairs",
            self.rank, len(basis), processed,
        )
        return self._interreduce([elements[i] for i in sorted(basis)])

    def _contains_unit(self, basis, elements):
        return any(not any(elements[i].lead.monomial) for i in basis)

    def _lead_key(self, vector):
        lead = self.leading_term(vector)
        return self.order.key(lead.position, lead.monomial)

    def _interreduce(self, elements: List[_Element]) -> Tuple[FreeElem, ...]:
        if self.rank == 1:
            units = [e for e in elements if not any(e.lead.monomial)]
            if units:
                return ((self.ring.one,),)
        reduced = []
        for index, element in enumerate(elements):
            others = elements[:index] + elements[index + 1:]
            lead_term = self.ring.term(element.lead.monomial, element.lead.coefficient)
            tail = list(element.vector)
            tail[element.lead.position] = tail[element.lead.position] - lead_term
            tail = self._reduce(tuple(tail), others) if others else tuple(tail)
            vector = list(tail)
            vector[element.lead.position] = vector[element.lead.position] + lead_term
            reduced.append(self._make_monic(tuple(vector)))
        reduced.sort(key=self._lead_key, reverse=True)
        return tuple(reduced)

    def syzygy_check(self, basis: Sequence[FreeElem]):
        """Pairs of basis vectors whose S-vector does not reduce to zero."""
        elements = self._elements(basis)
        failures = []
        for i in range(len(elements)):
            for j in range(i + 1, len(elements)):
                if elements[i].lead.position != elements[j].lead.position:
                    continue
                s_vector, _, _ = self.s_vector(elements[i].vector, elements[j].vector)
                if any(self._reduce(s_vector, elements)):
                    failures.append((i, j))
        return failures
