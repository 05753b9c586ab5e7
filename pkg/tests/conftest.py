import os
import time
from contextlib import contextmanager

import pytest
from hypothesis import HealthCheck, settings

settings.register_profile("default", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

_ACCEPTANCE: dict[int, tuple[str, str, float]] = {}


@pytest.fixture
def criterion():
    """Record the outcome of one acceptance criterion for the summary."""

    @contextmanager
    def record(number, text):
        start = time.perf_counter()
        try:
            yield
        except BaseException:
            _ACCEPTANCE[number] = ("FAIL", text, time.perf_counter() - start)
            raise
        _ACCEPTANCE[number] = ("PASS", text, time.perf_counter() - start)

    return record


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_ACCEPTANCE):
        status, text, secs = _ACCEPTANCE[n]
        terminalreporter.write_line(f"criterion {n:2d}: {status}  {text}  ({secs:.2f} s)")
