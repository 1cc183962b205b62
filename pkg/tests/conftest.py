import functools
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from verlinde.harish_chandra import build_H  # noqa: E402
from verlinde.hopf import universal_envelope  # noqa: E402
from verlinde.suites import lie_target, swap_pair  # noqa: E402


@functools.lru_cache(maxsize=None)
def envelope(name: str, p: int):
    return universal_envelope(lie_target(name, p))


@functools.lru_cache(maxsize=None)
def swap_smash(p: int):
    return build_H(swap_pair(p))


@pytest.fixture(scope="session")
def env():
    return envelope


@pytest.fixture(scope="session")
def smash5():
    return swap_smash(5)


# one PASS/FAIL line per acceptance criterion, collected from test_acceptance.py

_CRITERIA: dict[str, str] = {}


def pytest_runtest_logreport(report):
    if "test_acceptance.py" not in report.nodeid:
        return
    name = report.nodeid.split("::")[-1]
    if report.when == "call":
        _CRITERIA[name] = "PASS" if report.passed else "FAIL"
    elif report.failed:
        _CRITERIA[name] = "FAIL"


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for name, status in _CRITERIA.items():
        terminalreporter.write_line(f"{status}  {name.removeprefix('test_')}")
