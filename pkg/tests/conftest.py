import os
import sys

sys.path.insert(0, os.path.dirname(__file__))

import acceptance_log  # noqa: E402


def pytest_terminal_summary(terminalreporter):
    if not acceptance_log.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(acceptance_log.RESULTS):
        ok, text = acceptance_log.RESULTS[n]
        terminalreporter.write_line(f"criterion {n}: {'PASS' if ok else 'FAIL'}  {text}")
