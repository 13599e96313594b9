import functools

import pytest

from verbalrank.catalog import get_group
from verbalrank.subgroups import full


@functools.lru_cache(maxsize=None)
def group(name):
    """Catalog group as a full subgroup handle, built once per session."""
    return full(get_group(name))


@pytest.fixture
def G():
    return group


ACCEPTANCE_LINES = {}


def record_acceptance(number, ok, detail):
    line = f"criterion {number:2d}: {'PASS' if ok else 'FAIL'}  {detail}"
    ACCEPTANCE_LINES[number] = line
    print(line)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for k in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(ACCEPTANCE_LINES[k])
