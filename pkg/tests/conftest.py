import random

import pytest

from orchardcross.geom import PointConfig, is_generic


def random_generic_config(rng: random.Random, n: int, span: int = 1 << 20) -> PointConfig:
    while True:
        coords = {(rng.randrange(span), rng.randrange(span)) for _ in range(n)}
        if len(coords) < n:
            continue
        cfg = PointConfig.from_coords(sorted(coords))
        if is_generic(cfg):
            return cfg


@pytest.fixture
def rng():
    return random.Random(20240611)


SQUARE = PointConfig.from_coords([(0, 0), (2, 0), (2, 2), (0, 2)])
TRIANGLE_PLUS = PointConfig.from_coords([(0, 0), (6, 0), (0, 6), (1, 2)])


# one "PASS/FAIL criterion N: ..." line per acceptance criterion, echoed after the run
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[2].rstrip(":"))):
            terminalreporter.write_line(line)
