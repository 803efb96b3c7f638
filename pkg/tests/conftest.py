"""Shared test helpers (the directory itself must be importable for
oracles.py)."""

from importlib import resources

import pytest


@pytest.fixture(scope="session")
def fixture_text():
    def load(name: str) -> str:
        return (resources.files("gfmredux") / "fixtures" / name).read_text(
            encoding="utf-8"
        )
    return load
