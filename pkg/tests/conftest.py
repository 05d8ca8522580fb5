import re
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from helpers import B, F, make  # noqa: E402


@pytest.fixture
def torus_max():
    # two triangles glued into a once-decorated torus
    return make((1, 1, 1), [(1, 1)] * 3, [
        (0, 0, (), [[(0, F), (1, F), (2, B)]]),
        (0, 0, (), [[(2, F), (0, B), (1, B)]]),
    ])


@pytest.fixture
def torus_square():
    return make((1, 1, 1), [(1, 1)] * 2, [(0, 0, (), [[(0, F), (1, F), (0, B), (1, B)]])])


@pytest.fixture
def torus_loop():
    return make((1, 1, 1), [(1, 1)], [(0, 0, (), [[(0, F)], [(0, B)]])])


@pytest.fixture
def sphere_loop():
    return make((0, 3, 1), [(1, 1)], [(0, 1, (), [[(0, F)]]), (0, 1, (), [[(0, B)]])])


@pytest.fixture
def sphere_theta():
    # three decorated points joined in a triangle, two triangular faces
    return make((0, 3, 3), [(1, 2), (2, 3), (3, 1)], [
        (0, 0, (), [[(0, F), (1, F), (2, F)]]),
        (0, 0, (), [[(2, B), (1, B), (0, B)]]),
    ])


@pytest.fixture
def nested_loops_bigon():
    # two parallel loops around one puncture: the strip between them is an unpunctured bigon
    return make((0, 4, 1), [(1, 1), (1, 1)], [
        (0, 1, (), [[(0, F)]]),
        (0, 0, (), [[(0, B), (1, F)]]),
        (0, 2, (), [[(1, B)]]),
    ])


def pytest_terminal_summary(terminalreporter):
    # one line per acceptance criterion; sub-suites (6a, 6b, ...) are folded into their criterion
    results = {}
    for outcome in ("passed", "failed"):
        for report in terminalreporter.stats.get(outcome, []):
            if report.when != "call" or "test_acceptance.py" not in report.nodeid:
                continue
            name = report.nodeid.split("::")[-1]
            match = re.match(r"test_criterion_(\d+)([a-z]?)_(\w+)", name)
            if match:
                number, _, label = match.groups()
                results.setdefault(int(number), []).append((label, outcome == "passed"))
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(results):
        parts = results[number]
        verdict = "PASS" if all(ok for _, ok in parts) else "FAIL"
        detail = ", ".join(f"{label} {'ok' if ok else 'FAILED'}" for label, ok in sorted(parts))
        terminalreporter.write_line(f"criterion {number}: {verdict}  ({detail})")
