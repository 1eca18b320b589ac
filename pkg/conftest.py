import os
import sys

import pytest

ROOT = os.path.dirname(os.path.abspath(__file__))
sys.path.insert(0, ROOT)

from degeneration.model import load_degeneration  # noqa: E402
from parameters import getParameters  # noqa: E402

CASES_DIR = os.path.join(ROOT, "cases")


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: end-to-end runs over whole case files")


@pytest.fixture(scope="session")
def cases_dir():
    return CASES_DIR


@pytest.fixture(scope="session")
def load_case_file():
    """Load a shipped degeneration by file name, e.g. load_case_file("five_point.json")"""
    def load(name):
        return load_degeneration(os.path.join(CASES_DIR, name))
    return load


@pytest.fixture
def params():
    """Analysis parameters with limits small enough for the test suite"""
    p = getParameters()
    p.maxCosets = 200000
    p.tietzeBudget = 5000
    return p
