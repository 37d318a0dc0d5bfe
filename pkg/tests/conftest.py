import pytest

from subcart import load_space
from subcart.fixtures import fixture_path


@pytest.fixture(scope="session")
def cone():
    return load_space(fixture_path("cone"))


@pytest.fixture(scope="session")
def sphere():
    return load_space(fixture_path("sphere"))


@pytest.fixture(scope="session")
def cross():
    return load_space(fixture_path("coordinate_cross"))


@pytest.fixture(scope="session")
def umbrella():
    return load_space(fixture_path("whitney_umbrella"))


@pytest.fixture(scope="session")
def half_line():
    return load_space(fixture_path("half_line"))


@pytest.fixture(scope="session")
def single_point():
    return load_space(fixture_path("single_point"))
