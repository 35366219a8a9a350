from __future__ import annotations

ACCEPTANCE_LINES: list[str] = []

# rays of the n = 3 GZ fan, labelled 1..6 as used by the cone names in the tests
GZ3_RAYS = {1: (1, 0, 0), 2: (-1, 0, 0), 3: (0, 1, 0), 4: (0, -1, 0), 5: (1, 0, -1), 6: (0, -1, 1)}


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1][2:].rstrip(":"))):
            terminalreporter.write_line(line)
