def pytest_terminal_summary(terminalreporter, exitstatus, config):
    rows = []
    for status in ("passed", "failed"):
        for rep in terminalreporter.stats.get(status, []):
            if "test_acceptance" in rep.nodeid and rep.when == "call":
                name = rep.nodeid.split("::")[-1]
                rows.append((name, "PASS" if status == "passed" else "FAIL"))
    for rep in terminalreporter.stats.get("error", []):
        if "test_acceptance" in rep.nodeid:
            rows.append((rep.nodeid.split("::")[-1], "FAIL"))
    if rows:
        terminalreporter.write_line("")
        terminalreporter.write_line("acceptance criteria:")
        for name, status in sorted(set(rows)):
            terminalreporter.write_line(f"  {status}  {name}")
