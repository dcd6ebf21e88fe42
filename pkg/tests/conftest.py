import pytest
from hypothesis import settings

settings.register_profile("ci", derandomize=True, max_examples=150,
                          deadline=None)
settings.load_profile("ci")


@pytest.fixture
def ctx21():
    from padicsharp import PadicContext
    return PadicContext(2, 1)


@pytest.fixture
def ctx32():
    from padicsharp import PadicContext
    return PadicContext(3, 2)
