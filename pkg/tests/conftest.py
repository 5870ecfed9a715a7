import re
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

_acceptance = {}


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.outcome != "passed"):
        return
    match = re.search(r"test_acceptance\.py::test_criterion_(\d+)", report.nodeid)
    if not match:
        return
    key = int(match.group(1))
    ok = report.outcome == "passed"
    prev = _acceptance.get(key, (True, []))
    failed = prev[1] + ([report.nodeid.split("::")[-1]] if not ok else [])
    _acceptance[key] = (prev[0] and ok, failed)


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(_acceptance):
        ok, failed = _acceptance[key]
        line = f"criterion {key:2d}: {'PASS' if ok else 'FAIL'}"
        if failed:
            line += "  (" + ", ".join(failed) + ")"
        terminalreporter.write_line(line)
