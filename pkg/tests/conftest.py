import zlib

import numpy as np
import pytest

_ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in _ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture
def record():
    """Log one PASS/FAIL line per acceptance criterion, then assert it."""

    def _record(name, ok, detail=""):
        line = f"{'PASS' if ok else 'FAIL'}  {name}  {detail}".rstrip()
        _ACCEPTANCE_LINES.append(line)
        print(line)
        assert ok, line

    return _record


@pytest.fixture
def rng(request):
    # seeded from the test id: reruns reproduce, and the seed is in the report
    seed = zlib.crc32(request.node.nodeid.encode())
    request.node.user_properties.append(("seed", seed))
    print(f"rng seed {seed}")
    return np.random.default_rng(seed)


@pytest.fixture
def bell():
    from luent.state import make_named

    return make_named("bell", 2, 2).as_bipartite()
