import sys


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    # replay the acceptance verdict lines outside of output capture so
    # they are visible even when every criterion passes
    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "ACCEPT_LINES", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
