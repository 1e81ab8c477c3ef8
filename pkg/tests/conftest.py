import time
from contextlib import contextmanager

import pytest

RESULTS: dict[int, str] = {}


class _Criterion:
    def __init__(self, number, title, limit):
        self.number, self.title, self.limit = number, title, limit
        self.notes: list[str] = []

    def note(self, text):
        self.notes.append(text)


@pytest.fixture
def criterion():
    """Context manager timing one acceptance criterion and recording a
    PASS/FAIL line for the terminal summary."""

    @contextmanager
    def run(number, title, limit):
        c = _Criterion(number, title, limit)
        t0 = time.perf_counter()
        try:
            yield c
        except BaseException as exc:
            dt = time.perf_counter() - t0
            line = f"FAIL  criterion {number}: {title} ({dt:.2f}s, limit {limit}s) {type(exc).__name__}: {exc}"
            RESULTS[number] = line
            print(line)
            raise
        dt = time.perf_counter() - t0
        ok = dt < limit
        extra = f" [{'; '.join(c.notes)}]" if c.notes else ""
        line = f"{'PASS' if ok else 'FAIL'}  criterion {number}: {title} ({dt:.2f}s, limit {limit}s){extra}"
        RESULTS[number] = line
        print(line)
        assert ok, f"criterion {number} took {dt:.2f}s, over the {limit}s limit"

    return run


def pytest_terminal_summary(terminalreporter):
    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(RESULTS):
        terminalreporter.write_line(RESULTS[n])
