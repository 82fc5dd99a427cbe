from pathlib import Path

import pytest

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"


@pytest.fixture(scope="session")
def fixtures_dir() -> Path:
    return FIXTURES


@pytest.fixture(scope="session")
def s3_dir() -> Path:
    return FIXTURES / "s3"


@pytest.fixture(scope="session")
def generality_dir() -> Path:
    return FIXTURES / "generality"


@pytest.fixture(scope="session")
def ten_terms_obo() -> Path:
    return FIXTURES / "parse" / "ten_terms.obo"
