import pytest

from flatlab.kernel.errors import RankMismatchError
from flatlab.modules.presented_module import PresentedModule, supports_intersect
from flatlab.modules.tower import TowerMismatchError, localize_by_element
from flatlab.tests.utils import cyclic

pytestmark = pytest.mark.usefixtures("disable_logging")


class TestPresentation:
    def test_relation_arity(self, base_st):
        s, _ = base_st.ambient.gens
        with pytest.raises(RankMismatchError):
            PresentedModule(base_st, 2, [(s,)])

    def test_relations_reduced_modulo_algebra(self, sqrt_s):
        s, _, u = sqrt_s.ambient.gens
        module = PresentedModule(sqrt_s, 1, [(u**2 - s,)])
        assert module.relations == ()
        assert not module.is_zero()

    def test_lifted_relations_contain_algebra_relations(self, sqrt_s):
        s, _, u = sqrt_s.ambient.gens
        module = PresentedModule.free(sqrt_s, 2)
        lifted = module.lifted_relations()
        assert (u**2 - s, sqrt_s.ambient.zero) in lifted
        assert len(lifted) == 2

    def test_canonical_text(self, ideal_module):
        assert ideal_module.canonical_text() == "over Q[s, t] : gens 2 ; rel (t, -s)"

    def test_dict(self, ideal_module):
        assert ideal_module.dict() == {
            "name": "I",
            "algebra": "Q[s, t]",
            "gens": 2,
            "relations": [["t", "-s"]],
        }


class TestZeroTest:
    def test_rank_zero(self, base_st):
        assert PresentedModule(base_st, 0).is_zero()

    def test_comaximal_relations(self, base_st):
        s, _ = base_st.ambient.gens
        assert cyclic(base_st, s, s - 1).is_zero()

    def test_inverted_element_kills_quotient(self, base_st):
        algebra = localize_by_element(base_st, base_st.ambient.gens[0])
        s = algebra.ambient.gen("s")
        assert cyclic(algebra, s).is_zero()

    def test_torsion_module_is_nonzero(self, base_st):
        s, _ = base_st.ambient.gens
        assert not cyclic(base_st, s).is_zero()

    def test_normal_form_and_membership(self, ideal_module):
        s, t = ideal_module.ring.gens
        assert ideal_module.contains_zero_class((s * t, -(s**2)))
        assert not ideal_module.contains_zero_class((s, t))
        assert ideal_module.normal_form((t, -s)) == (0, 0)


class TestAnnihilator:
    def test_cyclic_module(self, base_st):
        s, _ = base_st.ambient.gens
        annihilator = cyclic(base_st, s).annihilator()
        assert annihilator.groebner_basis() == (s,)

    def test_torsion_free_module(self, ideal_module):
        assert ideal_module.annihilator().is_zero()

    def test_direct_sum(self, base_st):
        s, t = base_st.ambient.gens
        module = cyclic(base_st, s).direct_sum(cyclic(base_st, t))
        assert module.annihilator().groebner_basis() == (s * t,)

    def test_zero_module(self, base_st):
        assert PresentedModule(base_st, 0).annihilator().is_unit()


class TestOperations:
    def test_direct_sum_relations(self, base_st):
        s, _ = base_st.ambient.gens
        module = PresentedModule.free(base_st, 1).direct_sum(cyclic(base_st, s))
        assert module.rank == 2
        assert module.relations == ((0, s),)

    def test_direct_sum_needs_same_algebra(self, base_st, sqrt_s):
        with pytest.raises(TowerMismatchError):
            PresentedModule.free(base_st, 1).direct_sum(PresentedModule.free(sqrt_s, 1))

    def test_prune_free_presentation(self, base_st):
        s, _ = base_st.ambient.gens
        pruned = PresentedModule(base_st, 2, [(base_st.ambient.one, s)]).prune()
        assert pruned.rank == 1
        assert pruned.is_free_presentation()

    def test_prune_substitutes_relations(self, base_st):
        ring = base_st.ambient
        s, t = ring.gens
        pruned = PresentedModule(base_st, 2, [(s, ring.zero), (ring.one, t)]).prune()
        assert pruned.rank == 1
        assert pruned.relations == ((-s * t,),)

    def test_prune_skips_non_constant_units(self, base_st):
        algebra = localize_by_element(base_st, base_st.ambient.gens[0])
        s, t = algebra.ambient.gen("s"), algebra.ambient.gen("t")
        module = PresentedModule(algebra, 2, [(s, t)])
        assert module.prune().rank == 2

    def test_rename_keeps_presentation(self, ideal_module):
        renamed = ideal_module.rename("J")
        assert renamed.name == "J"
        assert renamed.relations == ideal_module.relations
        assert ideal_module.name == "I"


class TestSupports:
    def test_meeting_supports(self, base_st):
        s, t = base_st.ambient.gens
        assert supports_intersect(cyclic(base_st, s), cyclic(base_st, t))

    def test_disjoint_supports(self, base_st):
        s, _ = base_st.ambient.gens
        assert not supports_intersect(cyclic(base_st, s), cyclic(base_st, s - 1))

    def test_needs_common_algebra(self, base_st, sqrt_s):
        with pytest.raises(TowerMismatchError):
            supports_intersect(PresentedModule.free(base_st, 1), PresentedModule.free(sqrt_s, 1))
