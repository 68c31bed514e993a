"""Addresses: 20-byte identifiers rendered as 0x-prefixed lowercase hex.

Addresses are plain strings in canonical form so they can be used as
mapping keys, sorted bytewise, and serialized without conversion. The
all-zero address is the mint/burn sentinel and never a real participant.
"""

import hashlib
import re

Address = str

ADDRESS_BYTES = 20
ZERO_ADDRESS: Address = "0x" + "00" * ADDRESS_BYTES

_HEX_RE = re.compile(r"^0x[0-9a-fA-F]{40}$")


def parse_address(value: str) -> Address:
    """Validate and canonicalize an address literal (case-normalized)."""
    if not isinstance(value, str) or not _HEX_RE.match(value):
        raise ValueError(f"not a 20-byte 0x-hex address: {value!r}")
    return value.lower()


def is_address(value: object) -> bool:
    return isinstance(value, str) and bool(_HEX_RE.match(value))


def derive_address(label: str) -> Address:
    """Deterministic address for a label (scenario actors, contracts)."""
    digest = hashlib.sha256(label.encode("utf-8")).digest()
    return "0x" + digest[:ADDRESS_BYTES].hex()


# Logical contract identities used as event emitters.
AUTHORIZATION_CONTRACT: Address = derive_address("spectrum-authorization-contract")
SECURITIZATION_CONTRACT: Address = derive_address("spectrum-securitization-contract")
SHARING_CONTRACT: Address = derive_address("spectrum-sharing-contract")
