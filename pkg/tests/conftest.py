"""
Pytest configuration and shared fixtures for all tests.
"""
import random

import pytest

from config import load_config
from database import get_db_path, init_db, set_db_path
from words import Letter


@pytest.fixture(autouse=True)
def test_db(tmp_path):
    """
    Point the run ledger at a fresh file under tmp_path for every test (autouse=True),
    so no test reads or writes a ledger in the working directory.
    """
    original_db_path = get_db_path()
    db_path = str(tmp_path / "test_qdual.db")
    set_db_path(db_path)
    init_db()

    yield db_path

    set_db_path(original_db_path)


@pytest.fixture
def config():
    """A grid-mode configuration with fixed seed, independent of the environment."""
    return load_config(mode="grid", seed=0, threads=1)


@pytest.fixture
def rng():
    """A seeded random generator."""
    return random.Random(1234)


@pytest.fixture
def short_words():
    """A few admissible words and their duals."""
    return [
        ((), ()),
        ((Letter.BC,), (Letter.BC,)),
        ((Letter.BD, Letter.AB), (Letter.CD, Letter.AC)),
        ((Letter.CD, Letter.BC, Letter.AB), (Letter.CD, Letter.BC, Letter.AB)),
    ]
