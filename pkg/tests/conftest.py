def pytest_terminal_summary(terminalreporter):
    """Repeat the acceptance lines, one per criterion, after the test run."""
    from test_acceptance import RESULTS

    from hyperlp.acceptance import BUDGETS_S

    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(RESULTS):
        rep = RESULTS[number]
        seconds = rep.runtime_ms / 1e3
        line = rep.line()
        if rep.passed and seconds >= BUDGETS_S[number]:
            line = line.replace("[PASS]", "[FAIL]", 1) + " (over time budget)"
        terminalreporter.write_line(f"{line} runtime={seconds:.2f}s budget={BUDGETS_S[number]}s")
