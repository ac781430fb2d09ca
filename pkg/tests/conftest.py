import pytest
from hypothesis import settings

settings.register_profile("leglab", derandomize=True, max_examples=60, deadline=None)
settings.load_profile("leglab")


@pytest.fixture
def small_bound(monkeypatch):
    monkeypatch.setenv("LEGLAB_MAX_OPS", "1000")
