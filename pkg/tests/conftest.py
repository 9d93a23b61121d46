import random

import pytest

from coxtour import RootSystem, Tournament


def random_tournament(system: RootSystem, rng: random.Random) -> Tournament:
    return Tournament(system, tuple(rng.getrandbits(1) for _ in range(system.num_positive_roots)))


@pytest.fixture
def rng():
    return random.Random(20240517)


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
