import acceptance_report


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = sorted(acceptance_report.LINES)
    if not lines:
        return
    terminalreporter.section("acceptance criteria")
    for num, name, passed, detail in lines:
        state = "PASS" if passed else "FAIL"
        terminalreporter.write_line(f"{state}  {num:2d} {name}: {detail}")
