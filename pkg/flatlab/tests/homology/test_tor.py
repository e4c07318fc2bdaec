import pytest

from flatlab.homology.tor import (
    TorMethod,
    WitnessMismatchError,
    free_resolution,
    tor,
    tor_diagonal,
    tor_resolution,
)
from flatlab.modules.presented_module import PresentedModule
from flatlab.tests.utils import cyclic

pytestmark = pytest.mark.usefixtures("disable_logging")


class TestFreeResolution:
    def test_residue_field(self, base_st):
        s, t = base_st.ambient.gens
        resolution = free_resolution(cyclic(base_st, s, t))
        assert resolution.ranks == [1, 2, 1]
        assert resolution.length == 2

    def test_free_module(self, base_st):
        resolution = free_resolution(PresentedModule.free(base_st, 3))
        assert resolution.ranks == [3]
        assert resolution.length == 0

    def test_ideal_module(self, ideal_module):
        assert free_resolution(ideal_module).ranks == [2, 1]

    def test_truncation(self, base_st):
        s, t = base_st.ambient.gens
        assert free_resolution(cyclic(base_st, s, t), max_length=1).ranks == [1, 2]

    def test_needs_base_module(self, sqrt_s):
        with pytest.raises(WitnessMismatchError):
            free_resolution(PresentedModule.free(sqrt_s, 1))


class TestTor:
    @pytest.mark.parametrize("method", list(TorMethod))
    def test_self_tor_of_torsion_module(self, base_st, method):
        _, t = base_st.ambient.gens
        module = cyclic(base_st, t)
        assert not tor(module, module, 0, method).is_zero
        assert not tor(module, module, 1, method).is_zero
        assert tor(module, module, 2, method).is_zero

    def test_tor_annihilator(self, base_st):
        _, t = base_st.ambient.gens
        module = cyclic(base_st, t)
        result = tor_diagonal(module, module, 1).module
        assert result.annihilator().contains(result.ring.gen("t"))

    @pytest.mark.parametrize("method", ["diagonal", "resolution"])
    def test_transverse_modules(self, base_st, method):
        s, t = base_st.ambient.gens
        first = cyclic(base_st, s)
        second = cyclic(base_st, t)
        assert not tor(first, second, 0, method).is_zero
        assert tor(first, second, 1, method).is_zero
        assert tor(first, second, 2, method).is_zero

    def test_residue_field(self, base_st):
        s, t = base_st.ambient.gens
        field = cyclic(base_st, s, t)
        for degree in range(3):
            assert not tor_diagonal(field, field, degree).is_zero
            assert not tor_resolution(field, field, degree).is_zero

    def test_flat_second_argument(self, base_st, sqrt_s):
        s, _ = base_st.ambient.gens
        result = tor_resolution(cyclic(base_st, s), PresentedModule.free(sqrt_s, 1), 1)
        assert result.is_zero
        assert result.method == TorMethod.Resolution

    def test_resolution_needs_base_first_argument(self, base_st, sqrt_s):
        with pytest.raises(WitnessMismatchError):
            tor_resolution(PresentedModule.free(sqrt_s, 1), PresentedModule.free(base_st, 1), 1)

    @pytest.mark.parametrize("degree", [-1, 3])
    def test_out_of_range(self, ideal_module, degree):
        assert tor(ideal_module, ideal_module, degree).is_zero

    def test_dict(self, ideal_module):
        result = tor(ideal_module, ideal_module, 2)
        assert result.dict()["method"] == "diagonal"
        assert result.dict()["degree"] == 2
        assert result.dict()["zero"] is True
