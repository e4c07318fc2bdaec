import random

import pytest

from flatlab.kernel.errors import InvalidArgumentError, NotGroebnerBasisError
from flatlab.kernel.monomial_order import MonomialOrder, OrderKind
from flatlab.kernel.operations import (
    eliminate,
    kernel_of_map,
    quotient,
    restrict_to_leading,
    saturation,
    saturation_with_exponent,
    syzygies,
)
from flatlab.kernel.submodule import Ideal, Submodule
from flatlab.tests.utils import random_polys

pytestmark = pytest.mark.usefixtures("disable_logging")


class TestSyzygies:
    def test_koszul_syzygy(self, ring_xy):
        x, y = ring_xy.gens
        module = syzygies([(x,), (y,)], ring_xy)
        assert module.rank == 2
        assert module.generators == ((y, -x),)

    def test_single_generator(self, ring_st):
        s, t = ring_st.gens
        assert syzygies([(t, -s)], ring_st).is_zero()

    def test_rejects_non_groebner_input(self, ring_xy):
        x, y = ring_xy.gens
        with pytest.raises(NotGroebnerBasisError):
            syzygies([(x**2,), (x * y + 1,)], ring_xy)

    def test_syzygies_annihilate_basis(self, ring_xy):
        x, y = ring_xy.gens
        basis = Ideal(ring_xy, [x**3 - 2 * x * y, x**2 * y - 2 * y**2 + x]).groebner_basis()
        module = syzygies([(g,) for g in basis], ring_xy)
        assert not module.is_zero()
        for relation in module.generators:
            assert sum((a * g for a, g in zip(relation, basis)), ring_xy.zero) == 0


class TestElimination:
    def test_eliminate_leading_variable(self, ring_xy):
        x, y = ring_xy.gens
        result = eliminate(Ideal(ring_xy, [x, x - y]), 1)
        assert result.generators == (y,)

    def test_inverse_eliminates_to_zero(self, ring_st):
        z, s = ring_st.gens
        assert eliminate(Ideal(ring_st, [z * s - 1]), 1).is_zero()

    def test_count_out_of_range(self, ring_xy):
        x, _ = ring_xy.gens
        with pytest.raises(InvalidArgumentError):
            eliminate(Ideal(ring_xy, [x]), 3)

    def test_restrict_to_leading(self, ring_xy):
        x, y = ring_xy.gens
        result = restrict_to_leading(Ideal(ring_xy, [y - x**2, y]), 1)
        assert result.generators == (x**2,)


class TestKernelOfMap:
    def test_map_onto_quotient(self, ring_x):
        (x,) = ring_x.gens
        kernel = kernel_of_map(ring_x, [(x,)], 1, [(x,)])
        assert kernel.is_whole()

    def test_injective_map(self, ring_st):
        s, t = ring_st.gens
        assert kernel_of_map(ring_st, [(t, -s)], 2).is_zero()

    def test_kernel_of_row(self, ring_st):
        s, t = ring_st.gens
        kernel = kernel_of_map(ring_st, [(s,), (t,)], 1)
        assert kernel.equals(Submodule(ring_st, 2, [(t, -s)]))


class TestColonAndSaturation:
    def test_quotient_by_element(self, ring_st):
        s, t = ring_st.gens
        module = Ideal(ring_st, [s * t, s**2]).module
        result = quotient(module, Ideal(ring_st, [s]))
        assert Ideal.from_submodule(result).equals(Ideal(ring_st, [s, t]))

    def test_quotient_by_unit_ideal(self, ring_st):
        s, t = ring_st.gens
        module = Submodule(ring_st, 2, [(t, -s)])
        assert quotient(module, Ideal(ring_st, [ring_st.one])).equals(module)

    def test_saturation_reaches_unit_ideal(self, ring_st):
        s, t = ring_st.gens
        module = Ideal(ring_st, [s * t, s**2]).module
        result, steps = saturation_with_exponent(module, Ideal(ring_st, [s]))
        assert result.is_whole()
        assert steps == 2

    def test_saturation_of_torsion_vector(self, ring_st):
        s, t = ring_st.gens
        # s*(e1 - e2) lies in the module, so e1 - e2 lies in the saturation
        module = Submodule(ring_st, 2, [(s, -s), (t, ring_st.zero)])
        result = saturation(module, s)
        assert result.contains((ring_st.one, -ring_st.one))
        assert not result.contains((ring_st.one, ring_st.zero))

    def test_saturation_by_zero(self, ring_st):
        with pytest.raises(InvalidArgumentError):
            saturation(Submodule(ring_st, 1), ring_st.zero)


class TestOperationProperties:
    @pytest.mark.parametrize("seed", range(6))
    def test_colon_chain(self, ring_st, seed):
        rng = random.Random(seed)
        module = Ideal(ring_st, random_polys(ring_st, rng, 2)).module
        (element,) = random_polys(ring_st, rng, 1, terms=2, degree=1)
        colon = quotient(module, Ideal(ring_st, [element]))
        saturated = saturation(module, element)
        assert module.is_subset(colon)
        assert colon.is_subset(saturated)
        assert quotient(saturated, Ideal(ring_st, [element])).is_subset(saturated)

    @pytest.mark.parametrize("seed", range(6))
    def test_elimination_stays_in_ideal(self, ring_xy, seed):
        rng = random.Random(seed)
        ideal = Ideal(ring_xy, random_polys(ring_xy, rng, 2))
        for generator in eliminate(ideal, 1).generators:
            assert ideal.contains(generator)
            assert all(monomial[0] == 0 for monomial in generator.keys())
        for generator in restrict_to_leading(ideal, 1).generators:
            assert ideal.contains(generator)
            assert all(monomial[1] == 0 for monomial in generator.keys())

    def test_elimination_under_lex_ring(self, ring_xy):
        lex_ring = ring_xy.with_order(MonomialOrder(OrderKind.Lex))
        x, y = lex_ring.gens
        result = eliminate(Ideal(lex_ring, [x - y**2, x * y - 1]), 1)
        assert result.equals(Ideal(lex_ring, [y**3 - 1]))
