import pytest

ACCEPTANCE_LINES = []


@pytest.fixture
def acceptance(request):
    """Yields a recorder; the criterion's PASS/FAIL line is logged when the test ends."""
    label = {}

    def record(text):
        label["text"] = text

    yield record
    rep = getattr(request.node, "rep_call", None)
    status = "PASS" if rep is not None and rep.passed else "FAIL"
    ACCEPTANCE_LINES.append(f"{status}  {label.get('text', request.node.name)}")


@pytest.hookimpl(wrapper=True, tryfirst=True)
def pytest_runtest_makereport(item, call):
    rep = yield
    if rep.when == "call":
        item.rep_call = rep
    return rep


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
