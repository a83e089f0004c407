import random
from pathlib import Path

import pytest

from kronslocc import Matrix, Pencil, State

FIXTURES = Path(__file__).parent / "fixtures"


def pencil(R, S) -> Pencil:
    return Pencil(Matrix(R), Matrix(S))


def state(R, S) -> State:
    return State(Matrix(R), Matrix(S))


@pytest.fixture
def rng():
    return random.Random(20241017)


@pytest.fixture
def fixtures() -> Path:
    return FIXTURES


# criterion number -> (passed, detail); filled by the acceptance suite
ACCEPTANCE: dict[int, tuple[bool, str]] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[n]
        terminalreporter.write_line(f"criterion {n}: {'PASS' if ok else 'FAIL'}  {detail}")
