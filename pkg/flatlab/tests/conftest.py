
import pytest

from flatlab.kernel.field import CoefficientField
from flatlab.modules.presented_module import PresentedModule
from flatlab.modules.tower import AffineAlgebra, BaseTower


@pytest.fixture(scope="session")
def tower_st():
    yield BaseTower(CoefficientField.rationals(), ("s", "t"))


@pytest.fixture(scope="session")
def tower_t():
    yield BaseTower(CoefficientField.rationals(), ("t",))


@pytest.fixture(scope="session")
def base_st(tower_st):
    yield AffineAlgebra.base(tower_st)


@pytest.fixture(scope="session")
def base_t(tower_t):
    yield AffineAlgebra.base(tower_t)


@pytest.fixture
def ideal_module(base_st):
    s, t = base_st.ambient.gens
    yield PresentedModule(base_st, 2, [(t, -s)], "I")


@pytest.fixture(scope="session")
def sqrt_s(tower_st):
    ring = AffineAlgebra(tower_st, ("u",)).ambient
    s, _, u = ring.gens
    yield AffineAlgebra.create(tower_st, ("u",), [u**2 - s], "A")
