import pytest

from carterkit.grpspec import build_paper_example, build_spec


def tuples(G):
    """Element set of a package group, as plain tuples for the oracles."""
    return frozenset(tuple(g) for g in G.elements())


@pytest.fixture(scope="session")
def example56():
    return build_paper_example()


@pytest.fixture
def spec():
    return lambda text: build_spec(text).group
