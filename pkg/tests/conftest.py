# Copyright 2026 cppforge contributors.
# This Software is subject to the terms of the XMOS Public Licence: Version 1.
import os.path
import sys

import pytest

package_dir = os.path.dirname(os.path.abspath(__file__))
sys.path.append(os.path.join(package_dir, '../python/'))

from cppforge.gf_core import make_field, make_tower  # noqa: E402


def pytest_addoption(parser):
    parser.addoption("--runslow", action="store_true", default=False,
                     help="also run the sweeps up to order 4096")


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: sweeps up to order 4096, run with --runslow")


def pytest_collection_modifyitems(config, items):
    if config.getoption("--runslow"):
        return
    skip_slow = pytest.mark.skip(reason="needs --runslow")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip_slow)


@pytest.fixture(scope="session")
def F2():
    return make_field(2)


@pytest.fixture(scope="session")
def F4():
    return make_field(2, 2)


@pytest.fixture(scope="session")
def F5():
    return make_field(5)


@pytest.fixture(scope="session")
def F8():
    return make_field(2, 3)


@pytest.fixture(scope="session")
def F16():
    return make_field(2, 4)


@pytest.fixture(scope="session")
def F16_over_F4():
    return make_tower(2, 2, 2)


@pytest.fixture(scope="session")
def F25_over_F5():
    return make_tower(5, 1, 2)


@pytest.fixture(scope="session")
def F64_over_F4():
    return make_tower(2, 2, 3)


@pytest.fixture(scope="session")
def F64_over_F8():
    return make_tower(2, 3, 2)


@pytest.fixture(scope="session")
def F27_over_F3():
    return make_tower(3, 1, 3)
