"""Shared pytest configuration.

Keeps the tests directory importable (for the oracles module) and pins
hypothesis to a profile that plays well with a bounded suite runtime.
"""

import os
import sys

from hypothesis import HealthCheck, settings

sys.path.insert(0, os.path.dirname(__file__))

settings.register_profile(
    "suite",
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.filter_too_much],
)
settings.load_profile("suite")


def pytest_terminal_summary(terminalreporter):
    """One PASS/FAIL line per acceptance criterion, printed uncaptured at the
    end of the run (see tests/test_acceptance.py)."""
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(RESULTS):
        ok, text = RESULTS[num]
        terminalreporter.write_line(
            f"[{num:2d}] {'PASS' if ok else 'FAIL'}  {text}")
