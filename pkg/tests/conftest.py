import pytest

_criteria = []


@pytest.fixture
def criterion():
    """Record one acceptance line: criterion(number, name, passed, detail)."""
    def record(number, name, passed, detail=""):
        line = f"criterion {number:>2} {'PASS' if passed else 'FAIL'}  {name}  {detail}".rstrip()
        _criteria.append((number, line))
        print(line)
        return passed
    return record


def pytest_terminal_summary(terminalreporter):
    if _criteria:
        terminalreporter.section("acceptance criteria")
        for _, line in sorted(_criteria):
            terminalreporter.write_line(line)
