"""
pytest configuration file
"""

import sys
from pathlib import Path

import pytest

# Add the repository root to path so `src` imports resolve
root_path = Path(__file__).parent.parent
sys.path.insert(0, str(root_path))

from src.shiftspace import (  # noqa: E402
    CHACON,
    THUE_MORSE,
    FiniteType,
    FullShift,
    TildeExtension,
    generate_language,
)


@pytest.fixture(scope="session")
def full2():
    """Full shift on two symbols"""
    return generate_language(FullShift(k=2), 12)


@pytest.fixture(scope="session")
def golden():
    """Golden-mean shift: no two consecutive 1s"""
    return generate_language(FiniteType(k=2, forbidden=("11",)), 10)


@pytest.fixture(scope="session")
def thue_morse():
    return generate_language(THUE_MORSE, 16)


@pytest.fixture(scope="session")
def thue_morse_deep():
    """Deep enough that windows of period-8 words expose an overlap"""
    return generate_language(THUE_MORSE, 20)


@pytest.fixture(scope="session")
def chacon():
    return generate_language(CHACON, 16)


@pytest.fixture(scope="session")
def tilde_tm():
    """Padded Thue-Morse at the flagship depth"""
    return generate_language(TildeExtension(inner=THUE_MORSE), 32)


@pytest.fixture(scope="session")
def tilde_full():
    return generate_language(TildeExtension(inner=FullShift(k=2)), 12)
