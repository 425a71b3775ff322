import pytest

from symchaos.graphs import EXAMPLE_GRAPHS, graph_system, parse_graph


@pytest.fixture(scope="session")
def k3():
    return graph_system(parse_graph(EXAMPLE_GRAPHS["k3"]))


@pytest.fixture(scope="session")
def path2():
    return graph_system(parse_graph(EXAMPLE_GRAPHS["path2"]))


@pytest.fixture(scope="session")
def loop1():
    return graph_system(parse_graph(EXAMPLE_GRAPHS["loop1"]))


@pytest.fixture(scope="session")
def figure8():
    return graph_system(parse_graph(EXAMPLE_GRAPHS["figure8"]))


@pytest.fixture(scope="session")
def two_segments():
    return graph_system(parse_graph(EXAMPLE_GRAPHS["two_segments"]))
