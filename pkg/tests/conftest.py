"""
lamroot pytest configuration and shared fixtures.
"""
import os
import sys
from unittest.mock import Mock

import pytest

# Add the parent directory to the path for imports
sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from events import emitter


@pytest.fixture
def test_files_path():
    """Fixture to get paths relative to the tests directory."""
    def _get_path(relative_path):
        test_dir = os.path.dirname(os.path.abspath(__file__))
        return os.path.join(test_dir, relative_path)
    return _get_path


@pytest.fixture
def repo_root():
    return os.path.dirname(os.path.dirname(os.path.abspath(__file__)))


@pytest.fixture
def event_recorder():
    """
    Register a Mock on the given events for the duration of a test.

    Usage: handler = event_recorder(EVENT_VIOLATION, EVENT_SUITE_END)
    """
    registered = []

    def _record(*events):
        handler = Mock()
        for event in events:
            emitter.on(event, handler)
            registered.append((event, handler))
        return handler

    yield _record

    for event, handler in registered:
        emitter.off(event, handler)


@pytest.fixture
def odd_primes():
    return [3, 5, 7, 11, 13, 31, 101]


@pytest.fixture
def mixed_moduli():
    """Prime powers, twice prime powers, powers of two and non-cyclic moduli."""
    return [3, 4, 7, 8, 9, 12, 15, 16, 18, 24, 25, 27, 32, 40, 48, 54, 63, 72, 105, 120]
