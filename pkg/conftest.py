import pytest

from catalog_store import CatalogStore
from walk_model import StepSet


@pytest.fixture(scope="session")
def catalog():
    """Classify every canonical model once for the whole session"""
    built = CatalogStore.build()
    yield built
    CatalogStore.close()


@pytest.fixture(scope="session")
def records_by_steps(catalog):
    """Catalog records keyed by compass string"""
    return {record.steps: record for record in catalog.models}


@pytest.fixture
def kreweras():
    """Kreweras' walk {NE, W, S}"""
    return StepSet.parse("NE,W,S")


@pytest.fixture
def reverse_kreweras():
    """Reverse Kreweras {SW, N, E}"""
    return StepSet.parse("SW,N,E")


@pytest.fixture
def double_kreweras():
    """Union of Kreweras and its reverse"""
    return StepSet.parse("NE,W,S,SW,N,E")


@pytest.fixture
def gessel():
    """Gessel's walk {E, W, NE, SW}"""
    return StepSet.parse("E,W,NE,SW")


@pytest.fixture
def vertical_model():
    """A vertically symmetric model with c = 1 + x^2"""
    return StepSet.parse("N,SW,SE")


@pytest.fixture
def simple_walk():
    """The simple walk {N, S, E, W}"""
    return StepSet.parse("N,S,E,W")


@pytest.fixture
def diagonal_walk():
    """The diagonal walk {NE, NW, SE, SW}"""
    return StepSet.parse("NE,NW,SE,SW")


@pytest.fixture
def tandem():
    """Tandem walk {N, W, SE}, order 6, non-algebraic"""
    return StepSet.parse("N,W,SE")


@pytest.fixture
def order6_x_plus_y():
    """Order-6 model whose orbit sum carries t = x + y"""
    return StepSet.parse("N,S,E,W,NW,SE")


@pytest.fixture
def order8_holonomic():
    """The non-algebraic order-8 model {E, W, NW, SE}"""
    return StepSet.parse("E,W,NW,SE")


@pytest.fixture
def infinite_model():
    """A model whose group is infinite"""
    return StepSet.parse("N,E,SW,NW")


@pytest.fixture
def tmp_catalog_path(tmp_path):
    """Catalog file location inside the test's temporary directory"""
    return tmp_path / "catalog.json"
