from pathlib import Path

import pytest

from symq.io import read_group_table

FIXTURES = Path(__file__).parent / "fixtures"
GROUP_FILES = ["z2xz2", "s3", "d4", "q8", "z8"]


def load_group(name):
    return read_group_table(FIXTURES / "groups" / f"{name}.txt")


@pytest.fixture(scope="session")
def s3():
    return load_group("s3")


# S3 fixture indices: 0 identity, transpositions 1, 2, 5, three-cycles 3, 4
S3_TRANSPOSITIONS = (1, 2, 5)
S3_THREE_CYCLES = (3, 4)


# one line per acceptance criterion, filled in by test_acceptance.py
ACCEPTANCE: dict[str, tuple[bool, str]] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE, key=lambda k: int(k[2:])):
        ok, detail = ACCEPTANCE[key]
        terminalreporter.write_line(f"{key} {'PASS' if ok else 'FAIL'}: {detail}")
