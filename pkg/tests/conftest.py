import random

import pytest

from tmtabu.board import STANDARD_LAYOUT, BoardLayout, MapState
from tmtabu.terrain import parse_code, standard_tiles

_ACCEPTANCE = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "acceptance(number, title): exit criterion of the build")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    marker = item.get_closest_marker("acceptance")
    if marker is None:
        return
    number, title = marker.args
    failed = rep.failed or (rep.when == "call" and rep.outcome != "passed")
    prev = _ACCEPTANCE.get(number, (title, True))
    _ACCEPTANCE[number] = (title, prev[1] and not failed)


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_ACCEPTANCE):
        title, ok = _ACCEPTANCE[number]
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  AC{number}  {title}")


def make_map(row_lengths, codes):
    if isinstance(codes, str):
        codes = codes.split() if " " in codes else list(codes)
    return MapState(BoardLayout(tuple(row_lengths)), tuple(parse_code(c) for c in codes))


def random_standard_map(rng):
    tiles = [t for t, n in standard_tiles().items() for _ in range(n)]
    rng.shuffle(tiles)
    return MapState(STANDARD_LAYOUT, tuple(tiles))


@pytest.fixture
def rng():
    return random.Random(12345)


@pytest.fixture
def standard_map(rng):
    return random_standard_map(rng)
