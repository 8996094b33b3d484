import json
import random

import pytest

from kconsist.cli import FIXTURES
from kconsist.io import load_instance


def pytest_addoption(parser):
    parser.addoption("--seed", type=int, default=20240611,
                     help="base seed for the randomised checks")


@pytest.fixture
def seed(request) -> int:
    return request.config.getoption("--seed")


@pytest.fixture
def rng(seed) -> random.Random:
    return random.Random(seed)


@pytest.fixture
def fixture_path():
    def get(name: str):
        return FIXTURES / f"{name}.json"
    return get


@pytest.fixture
def instance(fixture_path):
    def get(name: str):
        return load_instance(fixture_path(name))
    return get


@pytest.fixture
def fixture_json(fixture_path):
    def get(name: str) -> dict:
        return json.loads(fixture_path(name).read_text())
    return get


# one line per acceptance criterion in the terminal summary

_CRITERIA: dict[int, tuple[str, str]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): an acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None:
        return
    number, title = mark.args
    if rep.when == "call" or (rep.when == "setup" and not rep.passed):
        status = "PASS" if rep.passed else "FAIL"
        if _CRITERIA.get(number, ("PASS",))[0] == "FAIL":
            status = "FAIL"
        _CRITERIA[number] = (status, title)


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance")
    for number in sorted(_CRITERIA):
        status, title = _CRITERIA[number]
        terminalreporter.write_line(f"criterion {number:2d}: {status}  {title}")
