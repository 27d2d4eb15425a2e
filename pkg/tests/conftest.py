import time
from contextlib import contextmanager

import pytest

_RESULTS = {}


class Criterion:
    def __init__(self, number, title, limit=None):
        self.number, self.title, self.limit = number, title, limit
        self.elapsed = None
        self.passed = False

    @contextmanager
    def timed(self):
        start = time.perf_counter()
        yield
        self.elapsed = time.perf_counter() - start
        if self.limit is not None:
            assert self.elapsed < self.limit, f"took {self.elapsed:.2f}s, limit {self.limit}s"


@pytest.fixture
def criterion(request):
    created = []

    def make(number, title, limit=None):
        c = Criterion(number, title, limit)
        created.append(c)
        return c

    yield make
    failed = request.node.rep_call.failed if hasattr(request.node, "rep_call") else True
    for c in created:
        c.passed = not failed
        _RESULTS[c.number] = c


@pytest.hookimpl(hookwrapper=True, tryfirst=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    if rep.when == "call":
        item.rep_call = rep


def pytest_terminal_summary(terminalreporter):
    if not _RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_RESULTS):
        c = _RESULTS[number]
        timing = f" ({c.elapsed:.3f}s" + (f" < {c.limit}s)" if c.limit else ")") if c.elapsed is not None else ""
        terminalreporter.write_line(f"{'PASS' if c.passed else 'FAIL'}  criterion {number:>2}: {c.title}{timing}")
