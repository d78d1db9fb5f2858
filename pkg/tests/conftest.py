from hypothesis import settings

settings.register_profile("default", deadline=None)
settings.load_profile("default")

ACCEPTANCE_RESULTS: list[tuple[str, bool, str]] = []


def pytest_runtest_logreport(report):
    if report.when != "call" or "test_acceptance.py" not in report.nodeid:
        return
    name = report.nodeid.split("::")[-1]
    detail = ""
    for key, value in report.user_properties:
        if key == "detail":
            detail = value
    ACCEPTANCE_RESULTS.append((name, report.passed, detail))


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for name, passed, detail in ACCEPTANCE_RESULTS:
        line = f"{'PASS' if passed else 'FAIL'}  {name}"
        terminalreporter.write_line(line + (f"  ({detail})" if detail else ""))
