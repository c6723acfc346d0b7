"""Shared fixtures: the acceptance-criteria report shown after each run."""

from contextlib import contextmanager

import pytest

_acceptance_lines = []


@pytest.fixture
def criterion():
    """Record one pass/fail line per acceptance criterion."""

    @contextmanager
    def _criterion(num, desc):
        try:
            yield
        except BaseException:
            _acceptance_lines.append(f"acceptance criterion {num}: FAIL - {desc}")
            raise
        _acceptance_lines.append(f"acceptance criterion {num}: pass - {desc}")

    return _criterion


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if _acceptance_lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(_acceptance_lines):
            terminalreporter.write_line(line)
