import logging
import os
from fractions import Fraction
from pathlib import Path

import pytest

from freecomp.config import reset_config
from freecomp.symbolic.poly import Generator, GeneratorKind, NCPoly

DATA = Path(__file__).resolve().parent.parent / "data"


@pytest.fixture(autouse=True)
def fresh_config(tmp_path, monkeypatch):
    """Every test starts from the built-in defaults, away from any freecomp.conf."""
    for key in list(os.environ):
        if key.startswith("FREECOMP_"):
            monkeypatch.delenv(key)
    monkeypatch.chdir(tmp_path)
    reset_config()
    yield
    reset_config()
    # commands attach handlers bound to the captured streams
    logger = logging.getLogger("freecomp")
    for handler in logger.handlers[:]:
        logger.removeHandler(handler)
    logger.propagate = True


@pytest.fixture
def X():
    return Generator("X")


@pytest.fixture
def Y():
    return Generator("Y")


@pytest.fixture
def p():
    return Generator("p", GeneratorKind.PROJECTION)


@pytest.fixture
def x(X):
    return NCPoly.generator(X)


@pytest.fixture
def half():
    return Fraction(1, 2)


@pytest.fixture
def measures_dir():
    return DATA / "measures"


@pytest.fixture
def experiments_dir():
    return DATA / "experiments"
