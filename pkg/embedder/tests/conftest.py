import os
from pathlib import Path

import pytest

os.environ.setdefault("HF_HUB_OFFLINE", "1")

ROOT = Path(__file__).resolve().parent.parent
TINY_MODEL = ROOT / "tests" / "data" / "tiny-bert"
CAMPUS = ROOT / "samples" / "campus.txt"
TOWN = ROOT / "samples" / "town.txt"
EXPECTED_CAMPUS = ROOT / "tests" / "data" / "expected_tokens_campus.txt"


@pytest.fixture(scope="session")
def tiny_model():
    from semnorm_embedder.embed import load_model

    return load_model(str(TINY_MODEL))


@pytest.fixture(scope="session")
def campus_lines():
    return CAMPUS.read_text(encoding="utf-8").splitlines()


@pytest.fixture(scope="session")
def expected_campus_tokens():
    """Hand-labeled surviving tokens, one space-joined line per input sentence."""
    return [line.split() for line in EXPECTED_CAMPUS.read_text(encoding="utf-8").split("\n")][:50]
