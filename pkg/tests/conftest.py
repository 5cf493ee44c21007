def pytest_terminal_summary(terminalreporter):
    from tests.test_acceptance import RESULTS
    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for r in sorted(RESULTS, key=lambda r: r.number):
        terminalreporter.write_line(f"criterion {r.number:>2} {'PASS' if r.passed else 'FAIL'}  {r.title}  "
                                    f"({r.seconds:.1f}s)")
