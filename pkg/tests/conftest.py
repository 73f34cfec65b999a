import os
from pathlib import Path

import pytest

from wigner_clock.cli import main
from wigner_clock.sweep import read_csv

ROOT = Path(__file__).resolve().parents[1]
ACCEPTANCE_CONFIG = ROOT / "configs" / "acceptance.cfg"

# (criterion, verdict line) pairs filled in by test_acceptance.py
ACCEPTANCE_LINES: list[tuple[int, str]] = []


def run_cli_in(directory: Path, argv: list[str]) -> int:
    cwd = os.getcwd()
    os.chdir(directory)
    try:
        return main(argv)
    finally:
        os.chdir(cwd)


@pytest.fixture(scope="session")
def acceptance_dir(tmp_path_factory):
    """Output directory of one CLI run of the default acceptance sweep."""
    out = tmp_path_factory.mktemp("acceptance_run1")
    assert run_cli_in(out, ["--config", str(ACCEPTANCE_CONFIG)]) == 0
    return out


@pytest.fixture(scope="session")
def acceptance_result(acceptance_dir):
    return read_csv(acceptance_dir / "acceptance_sweep.csv")


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for _, line in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(line)
