import pathlib

import pytest

from tilecut import kernels, parse_spec

SPECS = pathlib.Path(__file__).resolve().parent.parent / "specs"


def load(name):
    return parse_spec((SPECS / name).read_text())


@pytest.fixture(scope="session", autouse=True)
def warm_kernels():
    # compile jit kernels (when enabled) outside any timed region
    kernels.warmup()


@pytest.fixture(scope="session")
def bg():
    return load("bg.tile")


@pytest.fixture(scope="session")
def a6b7():
    return load("a6b7.tile")


@pytest.fixture(scope="session")
def a4b5():
    return load("a4b5.tile")


@pytest.fixture(scope="session")
def triangles():
    return load("triangles.tile")


@pytest.fixture(scope="session")
def interval():
    return load("interval.tile")
