import pytest

_RESULTS: dict[int, tuple[str, list[str]]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None or (report.when != "call" and report.passed):
        return
    number, title = marker.args
    _, outcomes = _RESULTS.setdefault(number, (title, []))
    outcomes.append(report.outcome)


def pytest_terminal_summary(terminalreporter):
    if not _RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_RESULTS):
        title, outcomes = _RESULTS[number]
        status = "PASS" if outcomes and all(o == "passed" for o in outcomes) else "FAIL"
        terminalreporter.write_line(f"[{status}] {number:>2}. {title}")
    passed = sum(all(o == "passed" for o in v[1]) for v in _RESULTS.values())
    terminalreporter.write_line(f"{passed}/{len(_RESULTS)} criteria passed")
