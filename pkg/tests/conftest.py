import pytest

from ksembed.configuration import closure_generate, mub_bases, mub_seed


@pytest.fixture(scope="session")
def full_config():
    """The 165-ray configuration, generated once per session."""
    return closure_generate(mub_seed())


@pytest.fixture(scope="session")
def bases():
    return mub_bases()
