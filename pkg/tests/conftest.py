import sys
from pathlib import Path

import pytest

from qlat import FIXTURES
from qlat.io import build, parse_spec

sys.path.insert(0, str(Path(__file__).resolve().parent))


def load(name):
    return build(parse_spec(FIXTURES / name))


@pytest.fixture
def fixture_obj():
    return load


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is not None and mod.RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in mod.RESULTS:
            terminalreporter.write_line(line)
