"""Shared pytest plumbing.

test_acceptance.py appends one [PASS]/[FAIL] line per criterion to
ACCEPTANCE; the hook below prints them in a dedicated section after the
run, outside of output capture, so the verdict is visible even under -q.
"""

ACCEPTANCE: list = []


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE:
            terminalreporter.write_line(line)
