import sys
from functools import lru_cache
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from prohecke.instances import load_instance  # noqa: E402


@lru_cache(maxsize=None)
def instance(name):
    return load_instance(name)


@pytest.fixture
def load():
    return instance


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in mod.summary_lines():
        terminalreporter.write_line(line)
