from functools import lru_cache

import pytest

from toridegen import kernels
from toridegen.fan import face_fan
from toridegen.polytope import build_delta_star


@lru_cache(maxsize=None)
def delta_star(d):
    return build_delta_star(d)


@lru_cache(maxsize=None)
def sigma(d):
    return face_fan(delta_star(d))


@pytest.fixture(params=sorted(kernels.backends()))
def backend(request):
    return request.param


def pytest_report_header(config):
    return f"toridegen kernel backend: {kernels.BACKEND}"


# filled by the acceptance suite, one line per criterion
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
