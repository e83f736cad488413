import pytest

from josephson import ForcingProfile


@pytest.fixture(scope="session")
def cosine():
    return ForcingProfile.cosine()
