import os
import sys

import pytest

sys.path.insert(0, os.path.dirname(__file__))

from lcpde.exact import default_seed  # noqa: E402


@pytest.fixture
def seed():
    return default_seed()


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(mod.RESULTS):
        terminalreporter.write_line(mod.RESULTS[n])
