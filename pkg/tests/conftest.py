import sys


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance") or sys.modules.get("tests.test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for k, title in mod.TITLES.items():
        parts = mod.RESULTS.get(k)
        if parts is None:
            terminalreporter.write_line(f"criterion {k:2d} NOT RUN  {title}")
            continue
        status = "PASS" if all(ok for ok, _ in parts) else "FAIL"
        detail = "; ".join(d for _, d in parts)
        terminalreporter.write_line(f"criterion {k:2d} {status}  {title}: {detail}")
