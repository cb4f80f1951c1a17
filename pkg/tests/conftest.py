import random
from pathlib import Path

import pytest

from zpuv.serialize import load_spec

SPEC_DIR = Path(__file__).resolve().parent.parent / "specs"


@pytest.fixture(scope="session")
def spec_dir() -> Path:
    return SPEC_DIR


@pytest.fixture(scope="session")
def example_specs():
    return {i: load_spec(SPEC_DIR / f"example{i}.json") for i in (1, 2, 3)}


@pytest.fixture
def rng():
    return random.Random(20240611)


ACCEPTANCE: dict[int, str] = {}


def record(criterion: int, passed: bool, detail: str) -> None:
    line = f"criterion {criterion:>2}: {'PASS' if passed else 'FAIL'}  {detail}"
    ACCEPTANCE[criterion] = line
    print(line)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        terminalreporter.write_line(ACCEPTANCE[n])
