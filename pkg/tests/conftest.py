import pytest

_acceptance: list[tuple[str, str, float]] = []


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("acceptance")
    if marker is None or report.when != "call":
        return
    if report.passed:
        verdict = "PASS"
    elif hasattr(report, "wasxfail"):
        verdict = f"FAIL  [unattainable: {report.wasxfail.removeprefix('reason: ')}]"
    else:
        verdict = "FAIL"
    _acceptance.append((marker.args[0], verdict, report.duration))


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    terminalreporter.section("acceptance criteria")
    for label, verdict, duration in _acceptance:
        terminalreporter.write_line(f"{label}  ({duration:.2f}s)  {verdict}")
