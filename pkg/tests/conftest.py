import json
from pathlib import Path

import pytest

FROZEN = Path(__file__).parent / "data" / "frozen.json"

# filled by test_acceptance, printed once at the end of the run
ACCEPTANCE: dict[int, str] = {}


@pytest.fixture(scope="session")
def frozen():
    return json.loads(FROZEN.read_text())


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        terminalreporter.write_line(ACCEPTANCE[k])
