import pytest

from analogical import load_worked_example


@pytest.fixture(scope="session")
def worked():
    """The bundled 6-exemplar dataset and its given context (o, m, a)."""
    return load_worked_example()
