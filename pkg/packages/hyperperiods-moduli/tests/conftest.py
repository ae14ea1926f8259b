import random
from pathlib import Path

import pytest

import hyperperiods.moduli
from hyperperiods.moduli.enumerate import full_dim_catalog
from hyperperiods.moduli.serialization import load_graph

DATA = Path(hyperperiods.moduli.__file__).parent / "data"


@pytest.fixture(scope="session")
def g6k2():
    """Genus six graph with two ovals and hand-derived periods."""
    return load_graph(DATA / "g6k2.json")


@pytest.fixture(scope="session")
def g2k3():
    """Genus two, three ovals: the only full-dimensional cell."""
    return load_graph(DATA / "g2k3.json")


@pytest.fixture(scope="session")
def catalog():
    """Cached accessor for the full-dimensional cells of ``(g, k)``."""

    def _get(genus, ovals):
        return list(full_dim_catalog(genus, ovals))

    return _get


@pytest.fixture()
def rng():
    return random.Random(20240611)


@pytest.fixture(scope="session")
def g2k1():
    """Genus two, one oval: saddle chain ending in a three-horizontal vertex."""
    return load_graph(DATA / "g2k1.json")


@pytest.fixture(scope="session")
def g2k1_cells():
    """One full-dimensional one-oval cell per central-symmetry class."""
    paths = sorted(DATA.glob("g2k1_cell_*.json"))
    return {path.stem.removeprefix("g2k1_cell_"): load_graph(path) for path in paths}


@pytest.fixture(scope="session")
def g2k2_half_strip():
    """Two-oval cell whose fibers are half-strips."""
    return load_graph(DATA / "g2k2_half_strip.json")


@pytest.fixture(scope="session")
def g2k2_quadrant():
    """Two-oval cell whose fibers are quadrants; not centrally symmetric."""
    return load_graph(DATA / "g2k2_quadrant.json")
