"""Tests fixtures."""

import pytest
from click.testing import CliRunner

from config.config import Settings
from utils.parser import parse_c, parse_cg, parse_spec


@pytest.fixture
def runner():
    return CliRunner()


@pytest.fixture
def settings():
    return Settings(_env_file=None, log_level="WARNING", default_k=2, seed=None)


@pytest.fixture
def write(tmp_path):
    """Write program text to a file and return its path."""
    counter = iter(range(1_000_000))

    def _write(text: str) -> str:
        path = tmp_path / f"program_{next(counter)}.txt"
        path.write_text(text)
        return str(path)

    return _write


@pytest.fixture
def a_loop():
    return parse_spec("P0 = a . P0")


@pytest.fixture
def jump_loop():
    """Left behavior D, right behavior a . D"""
    return parse_c("/#3;\\#1;!;\\#2;#;+\\a")


@pytest.fixture
def goto_program():
    return parse_cg("/b;/G0;/a;/L0;!")
