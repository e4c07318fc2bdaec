import pytest

from flatlab.kernel.errors import InvalidArgumentError, RingMismatchError
from flatlab.kernel.field import CoefficientField
from flatlab.kernel.monomial_order import (
    ModuleOrder,
    ModuleOrderKind,
    MonomialOrder,
    OrderKind,
)
from flatlab.kernel.groebner import GroebnerEngine
from flatlab.kernel.polynomial_ring import PolynomialRing

pytestmark = pytest.mark.usefixtures("disable_logging")


class TestCoefficientField:
    def test_non_prime_characteristic(self):
        with pytest.raises(InvalidArgumentError):
            CoefficientField(4)

    def test_rational_format(self, rationals):
        assert rationals.format(rationals.rational(3, 2)) == "3/2"
        assert rationals.format(rationals.rational(-4, 2)) == "-2"

    def test_prime_field_inverse(self):
        field = CoefficientField.prime_field(7)
        assert field.name == "F 7"
        assert field.format(field.rational(1, 2)) == "4"

    def test_vanishing_denominator(self):
        field = CoefficientField.prime_field(5)
        with pytest.raises(InvalidArgumentError):
            field.rational(1, 10)

    def test_content(self, rationals):
        values = [rationals.rational(-2, 3), rationals.rational(4, 9)]
        assert rationals.content(values) == rationals.rational(-2, 9)


class TestPolynomialRing:
    def test_duplicate_variables(self, rationals):
        with pytest.raises(InvalidArgumentError):
            PolynomialRing(rationals, ["s", "s"])

    def test_no_variables(self, rationals):
        with pytest.raises(InvalidArgumentError):
            PolynomialRing(rationals, [])

    def test_format(self, ring_st, rationals):
        s, t = ring_st.gens
        poly = s**2 * t - rationals.rational(3, 2) * s + 1
        assert ring_st.format(poly) == "s^2*t - 3/2*s + 1"
        assert ring_st.format(-s) == "-s"
        assert ring_st.format(ring_st.zero) == "0"

    def test_map_poly_with_rename(self, ring_st, rationals):
        target = PolynomialRing(rationals, ["s", "t", "s'"])
        s, t = ring_st.gens
        mapped = target.map_poly(s * t + s, ring_st, {"s": "s'"})
        assert target.format(mapped) == "t*s' + s'"

    def test_map_poly_missing_variable(self, ring_st, ring_x):
        s, _ = ring_st.gens
        with pytest.raises(RingMismatchError):
            ring_x.map_poly(s, ring_st)

    def test_check_foreign_polynomial(self, ring_st, ring_xy):
        with pytest.raises(RingMismatchError):
            ring_st.check(ring_xy.gens[0])

    def test_degree(self, ring_st):
        s, t = ring_st.gens
        assert ring_st.degree(s**2 * t + t) == 3
        assert ring_st.degree(ring_st.zero) == -1


class TestMonomialOrder:
    def test_unknown_order(self):
        with pytest.raises(InvalidArgumentError):
            MonomialOrder.from_name("deglex")

    def test_block_needs_split(self):
        with pytest.raises(InvalidArgumentError):
            MonomialOrder.from_name("block")

    def test_lex_against_grevlex(self):
        lex = MonomialOrder(OrderKind.Lex)
        grevlex = MonomialOrder(OrderKind.GrevLex)
        # x vs y^2 in two variables
        assert lex.key((1, 0)) > lex.key((0, 2))
        assert grevlex.key((1, 0)) < grevlex.key((0, 2))

    def test_block_orders(self):
        leading = MonomialOrder.elimination(1)
        trailing = MonomialOrder.trailing_elimination(1)
        assert leading.key((1, 0)) > leading.key((0, 5))
        assert trailing.key((0, 1)) > trailing.key((5, 0))

    def test_block_inner_order(self):
        grevlex_blocks = MonomialOrder.trailing_elimination(1)
        lex_blocks = MonomialOrder.trailing_elimination(1, OrderKind.Lex)
        # y^2 against z^3 inside the trailing block
        assert grevlex_blocks.key((0, 2, 0)) < grevlex_blocks.key((0, 0, 3))
        assert lex_blocks.key((0, 2, 0)) > lex_blocks.key((0, 0, 3))
        assert lex_blocks.inner_kind == OrderKind.Lex
        assert MonomialOrder(OrderKind.Lex).inner_kind == OrderKind.Lex
        assert str(lex_blocks) == "block(1, trailing, lex)"

    def test_position_over_term(self, ring_st):
        s, t = ring_st.gens
        vector = (s, t**2)
        pot = GroebnerEngine(ring_st, 2, ModuleOrder())
        top = GroebnerEngine(
            ring_st, 2, ModuleOrder(kind=ModuleOrderKind.TermOverPosition)
        )
        assert pot.leading_term(vector).position == 0
        assert top.leading_term(vector).position == 1
