"""Shared helpers: the acceptance suite records one verdict line per
criterion here and the terminal summary prints them after the run."""

_verdicts = {}


class verdict:
    """Context manager that records pass/fail for one acceptance criterion."""

    def __init__(self, index: int, description: str):
        self.index = index
        self.description = description

    def __enter__(self):
        return self

    def __exit__(self, exc_type, exc, tb):
        _verdicts[self.index] = (self.description, exc_type is None)
        return False


def pytest_terminal_summary(terminalreporter):
    if not _verdicts:
        return
    terminalreporter.section("acceptance criteria")
    for index in sorted(_verdicts):
        description, passed = _verdicts[index]
        status = "PASS" if passed else "FAIL"
        terminalreporter.write_line(f"criterion {index}: {status}  {description}")
