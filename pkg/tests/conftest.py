from pathlib import Path

import pytest

from newsprominence import kernels

DATA = Path(__file__).resolve().parent / "data"


@pytest.fixture
def data_dir() -> Path:
    return DATA


@pytest.fixture(params=sorted(kernels.backends()))
def backend(request):
    """Each importable kernel implementation in turn."""
    return kernels.backends()[request.param]


# acceptance criteria register their verdicts here; see test_acceptance.py
CRITERIA: dict[int, str] = {}


def pytest_runtest_makereport(item, call):
    number = getattr(item.function, "criterion", None)
    if number is None or call.when != "call":
        return
    verdict = "PASS" if call.excinfo is None else "FAIL"
    parts = getattr(item, "criterion_parts", [])
    detail = f" ({'; '.join(parts)})" if parts else ""
    CRITERIA[number] = f"criterion {number} [{item.function.title}]: {verdict}{detail}"


def pytest_terminal_summary(terminalreporter):
    if not CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(CRITERIA):
        terminalreporter.write_line(CRITERIA[number])
