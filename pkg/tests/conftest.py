from pathlib import Path

import pytest

from sftlock import LedgerEngine, derive_address

SCENARIO_DIR = Path(__file__).resolve().parent.parent / "scenarios"
GOLDEN_DIR = Path(__file__).resolve().parent / "golden"

SMA = derive_address("SMA")
PU = derive_address("PU")
SU = derive_address("SU")
SU2 = derive_address("SU2")


@pytest.fixture
def sma():
    return SMA


@pytest.fixture
def pu():
    return PU


@pytest.fixture
def su():
    return SU


@pytest.fixture
def engine():
    return LedgerEngine(sma=SMA)


@pytest.fixture
def staked_pair(engine):
    """Engine with NFSTs 1 and 2 minted to the PU and both staked."""
    engine.mint_nfst(SMA, PU, "ch17", "zone-A")
    engine.mint_nfst(SMA, PU, "ch18", "zone-A")
    engine.stake_nfst(PU, 1)
    engine.stake_nfst(PU, 2)
    return engine


def scenario_path(name: str) -> Path:
    return SCENARIO_DIR / f"{name}.scenario"
