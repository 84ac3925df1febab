import pytest

CRITERIA = {}


@pytest.fixture
def record_criterion():
    def record(number, passed, detail):
        CRITERIA[number] = (passed, detail)
    return record


def pytest_terminal_summary(terminalreporter):
    if not CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(CRITERIA):
        passed, detail = CRITERIA[number]
        terminalreporter.write_line(f"criterion {number:2d}: {'PASS' if passed else 'FAIL'}  {detail}")
