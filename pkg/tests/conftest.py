"""Shared fixtures and the acceptance-criteria terminal summary.

Tests in ``test_acceptance.py`` report one line per criterion through
:func:`record_acceptance`; the collected lines are echoed in a dedicated
section at the end of the run so a plain ``pytest -v`` shows every
criterion's measured value and verdict even when all of them pass.
"""
from __future__ import annotations

import numpy as np
import pytest

_acceptance_lines: list = []


def record_acceptance(line: str) -> None:
    _acceptance_lines.append(line)


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not _acceptance_lines:
        return
    terminalreporter.section("acceptance criteria")
    for line in _acceptance_lines:
        terminalreporter.write_line(line)


@pytest.fixture
def rng():
    """Deterministic generator for property-style sampling tests."""
    return np.random.default_rng(20240817)
