"""Pytest wiring for the script-style test_suite.py.

test_suite.py is written to be run as a script: ``test_result`` is a
reporting helper (not a test), and each ``test_*`` function catches its own
exceptions and returns False on failure. This hook keeps pytest from
collecting the helper and turns a False return into a pytest failure.
"""

import functools

import pytest


def _fail_on_false(func):
    @functools.wraps(func)
    def wrapper(*args, **kwargs):
        if func(*args, **kwargs) is False:
            pytest.fail(f"{func.__name__} reported failure (returned False)", pytrace=False)
    return wrapper


def pytest_collection_modifyitems(config, items):
    items[:] = [item for item in items if item.name != "test_result"]
    for item in items:
        if isinstance(item, pytest.Function):
            item.obj = _fail_on_false(item.obj)
