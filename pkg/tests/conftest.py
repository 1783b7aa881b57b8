import os
import tempfile

import pytest

# keep test runs away from the user's cache unless one is configured explicitly
if "POISSON_INV_CACHE" not in os.environ:
    os.environ["POISSON_INV_CACHE"] = tempfile.mkdtemp(prefix="poisson-inv-test-")

_LINES: dict[int, str] = {}


@pytest.fixture
def criterion():
    """Record the one-line outcome of an acceptance criterion; returns a context manager."""

    class Recorder:
        def __init__(self, number: int, text: str):
            self.number, self.text = number, text

        def __enter__(self):
            return self

        def __exit__(self, exc_type, exc, tb):
            status = "PASS" if exc_type is None else "FAIL"
            line = f"criterion {self.number}: {status}  {self.text}"
            _LINES[self.number] = line
            print(line)
            return False

    return Recorder


def pytest_terminal_summary(terminalreporter):
    if _LINES:
        terminalreporter.section("acceptance criteria")
        for k in sorted(_LINES):
            terminalreporter.write_line(_LINES[k])
