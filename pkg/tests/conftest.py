"""Shared pytest plumbing for the acceptance suite.

test_acceptance.py appends one line per criterion to `results`; the
terminal-summary hook prints them after the run, outside pytest's output
capture, so the pass/fail ledger is always visible.
"""

results = []


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for line in results:
        terminalreporter.write_line(line)
