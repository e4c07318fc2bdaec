"""
Term orders on monomials and on the terms of free modules.
"""

import enum
from dataclasses import dataclass
from functools import cached_property
from typing import Tuple

from sympy.polys.orderings import ProductOrder, grevlex, lex

from flatlab.kernel.errors import InvalidArgumentError

Monomial = Tuple[int, ...]


class OrderKind(str, enum.Enum):
    Lex = "lex"
    GrevLex = "grevlex"
    Block = "block"


class ModuleOrderKind(str, enum.Enum):
    PositionOverTerm = "pot"
    TermOverPosition = "top"


@dataclass(frozen=True)
class MonomialOrder:
    """A monomial order given by a kind and, for block orders, a split.

    A block order compares the first `split` exponents by the `block`
    order and breaks ties on the remaining exponents by the same order.
    With `trailing_first` the trailing block is compared first instead.
    """

    kind: OrderKind = OrderKind.GrevLex
    split: int = 0
    trailing_first: bool = False
    block: OrderKind = OrderKind.GrevLex

    @classmethod
    def from_name(cls, name):
        try:
            kind = OrderKind(name)
        except ValueError:
            raise InvalidArgumentError(f"Unknown monomial order '{name}'")
        if kind == OrderKind.Block:
            raise InvalidArgumentError("Block orders need a split")
        return cls(kind)

    @classmethod
    def elimination(cls, split, block=OrderKind.GrevLex):
        """Block order eliminating the first `split` variables."""
        return cls(OrderKind.Block, split, block=OrderKind(block))

    @classmethod
    def trailing_elimination(cls, split, block=OrderKind.GrevLex):
        """Block order eliminating all variables after the first `split`."""
        return cls(OrderKind.Block, split, trailing_first=True, block=OrderKind(block))

    @property
    def inner_kind(self) -> OrderKind:
        """The order used inside blocks; the order itself if it has none."""
        return self.block if self.kind == OrderKind.Block else self.kind

    @cached_property
    def key(self):
        if self.kind == OrderKind.Lex:
            return lex
        if self.kind == OrderKind.GrevLex:
            return grevlex
        if self.block == OrderKind.Block:
            raise InvalidArgumentError("Blocks cannot be ordered by a block order")
        split = self.split
        inner = lex if self.block == OrderKind.Lex else grevlex
        leading = (inner, lambda monom: monom[:split])
        trailing = (inner, lambda monom: monom[split:])
        if self.trailing_first:
            return ProductOrder(trailing, leading)
        return ProductOrder(leading, trailing)

    def __str__(self):
        if self.kind == OrderKind.Block:
            side = "trailing" if self.trailing_first else "leading"
            if self.block == OrderKind.GrevLex:
                return f"block({self.split}, {side})"
            return f"block({self.split}, {side}, {self.block.value})"
        return self.kind.value


@dataclass(frozen=True)
class ModuleOrder:
    """Order on the terms x^a e_i of a free module.

    Positions with a lower index dominate under position-over-term.
    """

    ring_order: MonomialOrder = MonomialOrder()
    kind: ModuleOrderKind = ModuleOrderKind.PositionOverTerm

    def key(self, position: int, monomial: Monomial):
        term_key = self.ring_order.key(monomial)
        if self.kind == ModuleOrderKind.PositionOverTerm:
            return -position, term_key
        return term_key, -position

    def with_ring_order(self, ring_order):
        return ModuleOrder(ring_order, self.kind)
