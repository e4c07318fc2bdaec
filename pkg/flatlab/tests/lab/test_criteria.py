import pytest

from flatlab.kernel.field import CoefficientField
from flatlab.lab.certificate import CriterionPreconditionError, Method, Verdict, check_certificate
from flatlab.lab.criteria import ass_points_report, dim2_criterion, main_criterion
from flatlab.modules.presented_module import PresentedModule
from flatlab.modules.tensor import tensor_power
from flatlab.modules.tower import AffineAlgebra, BaseTower
from flatlab.tests.utils import cyclic

pytestmark = pytest.mark.usefixtures("disable_logging")


class TestMainCriterion:
    def test_free_module(self, base_st):
        certificate = main_criterion(PresentedModule.free(base_st, 2))
        assert certificate.verdict == Verdict.Flat
        assert certificate.method == Method.MainCriterion
        assert certificate.d == 2

    def test_free_algebra(self, sqrt_s):
        assert main_criterion(PresentedModule.free(sqrt_s, 1)).verdict == Verdict.Flat

    def test_torsion_module(self, base_st):
        _, t = base_st.ambient.gens
        certificate = main_criterion(cyclic(base_st, t))
        assert certificate.verdict == Verdict.NotFlat
        assert certificate.witness.annihilator == "t"
        assert certificate.witness.element == ["1"]

    def test_torsion_free_but_not_flat(self, ideal_module):
        certificate = main_criterion(ideal_module)
        assert certificate.verdict == Verdict.NotFlat
        assert check_certificate(certificate, tensor_power(ideal_module, 2))
        assert certificate.witness.annihilator in ("s", "t")

    def test_univariate_base_uses_first_power(self, base_t):
        base = base_t
        (t,) = base.ambient.gens
        assert main_criterion(cyclic(base, t**2)).verdict == Verdict.NotFlat
        assert main_criterion(PresentedModule(base, 2, [(t, -t)])).verdict == Verdict.NotFlat

    def test_non_flat_algebra(self, tower_st):
        ring = AffineAlgebra(tower_st, ("u",)).ambient
        s, _, u = ring.gens
        algebra = AffineAlgebra.create(tower_st, ("u",), [s * u], "B")
        assert main_criterion(PresentedModule.free(algebra, 1)).verdict == Verdict.NotFlat

    def test_polynomial_extension(self, tower_st):
        algebra = AffineAlgebra.create(tower_st, ("u",), (), "P")
        assert main_criterion(PresentedModule.free(algebra, 1)).verdict == Verdict.Flat

    def test_larger_power(self, ideal_module):
        certificate = main_criterion(ideal_module, 3)
        assert certificate.d == 3
        assert certificate.verdict == Verdict.NotFlat

    @pytest.mark.parametrize("power", [0, 1])
    def test_power_below_dimension(self, ideal_module, power):
        with pytest.raises(CriterionPreconditionError):
            main_criterion(ideal_module, power)


class TestDim2Criterion:
    def test_agrees_with_main(self, ideal_module):
        certificate = dim2_criterion(ideal_module)
        assert certificate.method == Method.Dim2
        assert certificate.d == 2
        assert certificate.verdict == main_criterion(ideal_module).verdict

    def test_univariate_base(self, base_t):
        (t,) = base_t.ambient.gens
        assert dim2_criterion(cyclic(base_t, t)).verdict == Verdict.NotFlat

    def test_three_variables(self):
        tower = BaseTower(CoefficientField.rationals(), ("x", "y", "z"))
        with pytest.raises(CriterionPreconditionError):
            dim2_criterion(PresentedModule.free(AffineAlgebra.base(tower), 1))


class TestAssPointsReport:
    def test_flat(self, base_st):
        report = ass_points_report(PresentedModule.free(base_st, 1, "F"))
        assert report.startswith("Associated points of T^2 F over Q[s, t]:")
        assert report.endswith("condition holds")

    def test_not_flat(self, ideal_module):
        report = ass_points_report(ideal_module)
        assert "condition fails" in report
