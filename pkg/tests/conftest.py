import pytest

from facetforest.complex import from_names
from facetforest.ideal import MonomialIdeal


def pytest_collection_modifyitems(config, items):
    keywordexpr = config.option.keyword
    markexpr = config.option.markexpr
    if keywordexpr or markexpr:
        return  # let pytest handle this

    for item in items:
        if "exhaustive" in item.keywords:
            item.add_marker(pytest.mark.skip(reason="exhaustive tests not enabled"))
        if "koszul" in item.keywords:
            item.add_marker(pytest.mark.skip(reason="koszul tests not enabled"))


@pytest.fixture()
def stanley():
    """<uvw, xw, xy> over the variables x, y, u, v, w."""
    return from_names([["u", "v", "w"], ["x", "w"], ["x", "y"]], ["x", "y", "u", "v", "w"])


@pytest.fixture()
def nontree():
    return from_names([["a", "b", "c"], ["a", "c", "d"], ["b", "c", "d", "e"]])


@pytest.fixture()
def xy_xz():
    return MonomialIdeal.from_names([["x", "y"], ["x", "z"]], ["x", "y", "z"])


@pytest.fixture()
def rp2():
    """The six-vertex real projective plane."""
    triangles = "123 134 145 156 162 235 346 452 563 624".split()
    return from_names(
        [[f"v{c}" for c in triangle] for triangle in triangles],
        [f"v{i}" for i in range(1, 7)],
    )
