import os

import pytest

from monospin.config import load_config
from monospin.hover import solve_hover
from monospin.model import expand_design

ROOT = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
CONFIG1 = os.path.join(ROOT, "configs", "config1.ini")
CONFIG2 = os.path.join(ROOT, "configs", "config2.ini")


@pytest.fixture(scope="session")
def cfg1():
    return load_config(CONFIG1)


@pytest.fixture(scope="session")
def cfg2():
    return load_config(CONFIG2)


@pytest.fixture(scope="session")
def vehicle1(cfg1):
    return expand_design(cfg1.base, cfg1.masses, cfg1.design)


@pytest.fixture(scope="session")
def vehicle2(cfg2):
    return expand_design(cfg2.base, cfg2.masses, cfg2.design)


@pytest.fixture(scope="session")
def hover1(vehicle1):
    return solve_hover(vehicle1)
