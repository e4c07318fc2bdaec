import logging
from pathlib import Path

import pytest

import flatlab


@pytest.fixture(scope="module")
def disable_logging():
    logging.disable(logging.CRITICAL)
    yield
    logging.disable(logging.DEBUG)


@pytest.fixture(scope="session")
def corpus_path():
    yield Path(flatlab.__file__).parent / "corpus"
