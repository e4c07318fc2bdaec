import pytest

from flatlab.kernel.monomial_order import MonomialOrder, OrderKind
from flatlab.modules.presented_module import PresentedModule
from flatlab.modules.tensor import tensor_power
from flatlab.modules.torsion import (
    base_annihilator,
    is_torsion_free,
    torsion_module,
    torsion_quotient,
    torsion_submodule,
    torsion_witness,
)
from flatlab.tests.utils import cyclic

pytestmark = pytest.mark.usefixtures("disable_logging")


class TestTorsionSubmodule:
    def test_free_module(self, base_st):
        decomposition = torsion_submodule(PresentedModule.free(base_st, 2))
        assert decomposition.is_torsion_free
        assert decomposition.certificate == base_st.ambient.one

    def test_ideal_module_is_torsion_free(self, ideal_module):
        assert is_torsion_free(ideal_module)

    def test_cyclic_torsion(self, base_st):
        _, t = base_st.ambient.gens
        decomposition = torsion_submodule(cyclic(base_st, t))
        assert not decomposition.is_torsion_free
        assert decomposition.certificate

    def test_square_of_ideal_module(self, ideal_module):
        square = tensor_power(ideal_module, 2)
        assert not is_torsion_free(square)
        s, t = square.ring.gens
        one = square.ring.one
        zero = square.ring.zero
        element = (zero, one, -one, zero)
        assert not square.contains_zero_class(element)
        annihilator = base_annihilator(square, element)
        assert annihilator.contains(s)
        assert annihilator.contains(t)

    def test_free_algebra_module(self, sqrt_s):
        assert is_torsion_free(PresentedModule.free(sqrt_s, 1))

    def test_algebra_quotient_with_torsion(self, sqrt_s):
        _, _, u = sqrt_s.ambient.gens
        assert not is_torsion_free(cyclic(sqrt_s, u))

    def test_zero_module(self, base_st):
        assert is_torsion_free(PresentedModule(base_st, 0))


class TestTorsionParts:
    @pytest.fixture
    def mixed(self, base_st):
        s, _ = base_st.ambient.gens
        yield PresentedModule.free(base_st, 1).direct_sum(cyclic(base_st, s), "F+Q")

    def test_torsion_quotient(self, mixed):
        quotient = torsion_quotient(mixed)
        assert quotient.rank == 1
        assert quotient.is_free_presentation()
        assert quotient.name == "F+Q/T"

    def test_unpruned_quotient_keeps_generators(self, mixed):
        quotient = torsion_quotient(mixed, prune=False)
        assert quotient.rank == 2
        assert is_torsion_free(quotient)

    def test_torsion_module(self, mixed):
        s, _ = mixed.ring.gens
        torsion = torsion_module(mixed)
        assert torsion.rank == 1
        assert torsion.annihilator().groebner_basis() == (s,)
        assert torsion.name == "T(F+Q)"

    def test_torsion_module_of_torsion_free(self, ideal_module):
        assert torsion_module(ideal_module).rank == 0

    def test_witness(self, base_st):
        _, t = base_st.ambient.gens
        pair = torsion_witness(cyclic(base_st, t**2))
        assert pair is not None
        assert pair.annihilator == t**2

    def test_no_witness_for_torsion_free(self, ideal_module):
        assert torsion_witness(ideal_module) is None


class TestOrderIndependence:
    @pytest.fixture
    def lex(self):
        yield MonomialOrder(OrderKind.Lex)

    def test_ideal_module_square(self, base_st, lex):
        algebra = base_st.with_order(lex)
        s, t = algebra.ambient.gens
        module = PresentedModule(algebra, 2, [(t, -s)])
        assert is_torsion_free(module)
        square = tensor_power(module, 2)
        decomposition = torsion_submodule(square)
        assert not decomposition.is_torsion_free
        assert decomposition.module.ring.order == lex

    def test_algebra_modules(self, sqrt_s, lex):
        def verdicts(algebra):
            s, t, u = algebra.ambient.gens
            modules = [
                PresentedModule.free(algebra, 2),
                cyclic(algebra, u),
                cyclic(algebra, u * s - t),
                PresentedModule(algebra, 2, [(u, s)]),
            ]
            return [is_torsion_free(module) for module in modules]

        assert verdicts(sqrt_s.with_order(lex)) == verdicts(sqrt_s)
        assert verdicts(sqrt_s)[:2] == [True, False]
