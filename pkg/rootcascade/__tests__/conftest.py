import pytest

from rootcascade.cascade import Cascade, compute_cascade
from rootcascade.config import get_settings
from rootcascade.rootsys import RootSystem, build_root_system


@pytest.fixture(autouse=True)
def clear_settings():
    """
    Settings are cached per process; drop the cache so monkeypatched
    environment variables take effect.

    """
    get_settings.cache_clear()
    yield
    get_settings.cache_clear()


@pytest.fixture(scope="session")
def a2() -> RootSystem:
    return build_root_system("A2")


@pytest.fixture(scope="session")
def a3() -> RootSystem:
    return build_root_system("A3")


@pytest.fixture(scope="session")
def b2() -> RootSystem:
    return build_root_system("B2")


@pytest.fixture(scope="session")
def g2() -> RootSystem:
    return build_root_system("G2")


@pytest.fixture(scope="session")
def a2_cascade(a2: RootSystem) -> Cascade:
    return compute_cascade(a2)


@pytest.fixture(scope="session")
def a3_cascade(a3: RootSystem) -> Cascade:
    return compute_cascade(a3)


@pytest.fixture(scope="session")
def b2_cascade(b2: RootSystem) -> Cascade:
    return compute_cascade(b2)


@pytest.fixture(scope="session")
def g2_cascade(g2: RootSystem) -> Cascade:
    return compute_cascade(g2)
