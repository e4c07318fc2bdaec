import logging

import pytest

from flatlab.kernel.field import CoefficientField
from flatlab.kernel.polynomial_ring import PolynomialRing


@pytest.fixture(scope="session")
def rationals():
    yield CoefficientField.rationals()


@pytest.fixture(scope="session")
def ring_st(rationals):
    yield PolynomialRing(rationals, ["s", "t"])


@pytest.fixture(scope="session")
def ring_xy(rationals):
    yield PolynomialRing(rationals, ["x", "y"])


@pytest.fixture(scope="session")
def ring_x(rationals):
    yield PolynomialRing(rationals, ["x"])


@pytest.fixture(scope="module")
def disable_logging():
    logging.disable(logging.CRITICAL)
    yield
    logging.disable(logging.DEBUG)
