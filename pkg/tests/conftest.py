import os
import sys

sys.path.insert(0, os.path.dirname(__file__))

_criteria: dict[str, tuple[str, float]] = {}


def pytest_runtest_logreport(report):
    # one line per acceptance criterion, collected from test_criterion_<n>_* outcomes
    if report.when != "call" and not (report.when == "setup" and report.outcome != "passed"):
        return
    name = report.nodeid.rsplit("::", 1)[-1]
    if "test_acceptance.py" in report.nodeid and name.startswith("test_criterion_"):
        _criteria[name] = ("PASS" if report.passed else "FAIL", report.duration)


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(_criteria, key=lambda n: int(n.split("_")[2])):
        verdict, seconds = _criteria[name]
        number, label = name.split("_")[2], " ".join(name.split("_")[3:])
        terminalreporter.write_line(f"criterion {number}: {verdict}  {label}  ({seconds:.2f}s)")
