def pytest_terminal_summary(terminalreporter, exitstatus, config):
    """Repeat the one-line acceptance verdicts at the end of the run."""
    lines = getattr(config, "_acceptance_lines", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
