import random

import pytest
from hypothesis import settings

from leancut import fixtures
from leancut.corpus import seed_from_env

settings.register_profile("default", deadline=None, max_examples=60, derandomize=True)
settings.load_profile("default")


@pytest.fixture
def rng():
    return random.Random(seed_from_env())


@pytest.fixture(params=sorted(fixtures.GRAPHS))
def named_graph(request):
    return request.param, fixtures.GRAPHS[request.param]()


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
