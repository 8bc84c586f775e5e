import os

import pytest

import debug_utils


@pytest.fixture(autouse=True)
def clean_environment(monkeypatch):
    """Run every test with default settings and debug snapshots off."""
    for name in list(os.environ):
        if name.startswith('ORBITZETA_'):
            monkeypatch.delenv(name, raising=False)
    debug_utils.set_debug_enabled(False)
    yield
    debug_utils.set_debug_enabled(False)
