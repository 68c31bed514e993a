"""Deterministic spectrum-token ledger engine.

A single-writer, event-sourced state machine for spectrum assets: an
authorization registry of non-fungible spectrum tokens (NFSTs), a
securitization engine that escrows staked NFSTs and maps fungible share
movements onto lock/unlock transitions of their securitized twins
(SNFSTs), a minimal rentable-token module, an ERC-404-style mint/burn
baseline used for differential comparison, and a storage-primitive cost
accountant.
"""

from sftlock.addresses import ZERO_ADDRESS, derive_address, parse_address
from sftlock.amounts import UNIT, format_amount, format_shares, parse_amount
from sftlock.engine import LedgerEngine
from sftlock.erc404 import HybridLedger
from sftlock.journal import Journal

__version__ = "0.1.0"

__all__ = [
    "LedgerEngine",
    "HybridLedger",
    "Journal",
    "UNIT",
    "ZERO_ADDRESS",
    "derive_address",
    "parse_address",
    "parse_amount",
    "format_amount",
    "format_shares",
    "__version__",
]
