ACCEPTANCE_RESULTS: list[str] = []


def record_criterion(n: int, description: str, passed: bool, detail: str = "") -> None:
    status = "PASS" if passed else "FAIL"
    suffix = f": {detail}" if detail else ""
    ACCEPTANCE_RESULTS.append(f"[criterion {n:2d}] {status} {description}{suffix}")


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if ACCEPTANCE_RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_RESULTS):
            terminalreporter.write_line(line)
