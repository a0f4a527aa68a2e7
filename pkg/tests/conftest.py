"""Shared pytest plumbing.

ACCEPTANCE_LINES collects the one-line pass/fail verdicts from
tests/test_acceptance.py; the terminal-summary hook prints them after the
run so they are visible even though pytest captures per-test stdout.
"""

ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
