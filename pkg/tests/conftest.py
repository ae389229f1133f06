import re

_CRITERION = re.compile(r"test_acceptance\.py::test_criterion_(\d+)_(\w+)")


def pytest_terminal_summary(terminalreporter):
    lines = {}
    for outcome in ("passed", "failed", "error"):
        for report in terminalreporter.stats.get(outcome, []):
            if getattr(report, "when", "call") != "call" and outcome != "error":
                continue
            m = _CRITERION.search(report.nodeid)
            if m:
                verdict = "PASS" if outcome == "passed" else "FAIL"
                lines[int(m.group(1))] = f"criterion {m.group(1):>2} {verdict}  {m.group(2)}"
    if lines:
        terminalreporter.section("acceptance criteria")
        for key in sorted(lines):
            terminalreporter.write_line(lines[key])
