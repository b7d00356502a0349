import pytest

from curvature_structures.curvature.suite import CurvatureSuite
from curvature_structures.expr.zero_test import ZeroTester
from curvature_structures.geometry.chart import load_chart, parse_chart
from curvature_structures.geometry.fixtures import random_polynomial_spec
from curvature_structures.structures.checks import Checks
from curvature_structures.utils.db import deactivate_numeric_only


_cache = {}


def checks_of(name):
    """Seeded classifier checks of a built-in example, shared across test modules."""
    if name not in _cache:
        _cache[name] = Checks(CurvatureSuite(load_chart(name)).build())
    return _cache[name]


def random_checks_of(seed, dimension):
    """Checks of a seeded random polynomial metric, cached like the built-in examples."""
    key = ("random", seed, dimension)
    if key not in _cache:
        spec = random_polynomial_spec(seed, dimension)
        _cache[key] = Checks(CurvatureSuite(parse_chart(spec, f"random-{seed}-{dimension}")).build())
    return _cache[key]


@pytest.fixture(scope="session")
def checks_for():
    return checks_of


@pytest.fixture(scope="session")
def random_checks_for():
    return random_checks_of


@pytest.fixture(scope="session")
def example1():
    return checks_of("example1")


@pytest.fixture(scope="session")
def example2():
    return checks_of("example2")


@pytest.fixture(scope="session")
def example3():
    return checks_of("example3-x1-reading")


@pytest.fixture(scope="session")
def example4():
    return checks_of("example4-corrected")


@pytest.fixture
def tester():
    return ZeroTester(seed=0)


@pytest.fixture(autouse=True)
def symbolic_mode():
    yield
    deactivate_numeric_only()


@pytest.fixture(scope="session")
def same():
    """same(checks, expr, text): expr equals the chart expression ``text`` as a scalar field."""

    def compare(checks, expr, text):
        return checks.tester.is_zero(expr - checks.suite.chart.parse(text))

    return compare


def pytest_addoption(parser):
    parser.addoption("--runslow", action="store_true", default=False, help="run the sweeps over every fixture")


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: sweep over every fixture or four dimensional random metrics")


def pytest_collection_modifyitems(config, items):
    if config.getoption("--runslow"):
        return
    skip = pytest.mark.skip(reason="needs --runslow")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip)
