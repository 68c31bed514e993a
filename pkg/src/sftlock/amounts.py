"""Exact fixed-point share arithmetic.

One whole spectrum unit is 10^18 atto-shares. All balances are plain
Python ints (exact, unbounded); floor division by UNIT gives the integer
share count that drives lock/unlock transitions. No floating point is
used anywhere: decimal share notation ("0.3") is converted digit-exactly.
"""

import re

from sftlock.errors import AmountError

UNIT = 10**18
FRACTIONAL_DIGITS = 18

_ATTO_RE = re.compile(r"^[0-9]+$")
_SHARES_RE = re.compile(r"^([0-9]+)\.([0-9]+)$")


def parse_amount(value: object) -> int:
    """Parse an amount into atto-shares.

    Accepted forms:
      * non-negative int — already atto-shares
      * digit string ("300000000000000000") — atto-shares
      * decimal share notation ("0.3", "2.0") — whole.fraction units,
        at most 18 fractional digits, converted exactly
    """
    if isinstance(value, bool):
        raise AmountError(f"not an amount: {value!r}")
    if isinstance(value, int):
        if value < 0:
            raise AmountError(f"negative amount: {value}")
        return value
    if isinstance(value, float):
        raise AmountError(
            f"float amount {value!r} is inexact; use a quoted decimal string"
        )
    if isinstance(value, str):
        if _ATTO_RE.match(value):
            return int(value)
        match = _SHARES_RE.match(value)
        if match:
            whole, frac = match.groups()
            if len(frac) > FRACTIONAL_DIGITS:
                raise AmountError(
                    f"more than {FRACTIONAL_DIGITS} fractional digits: {value!r}"
                )
            return int(whole) * UNIT + int(frac) * 10 ** (FRACTIONAL_DIGITS - len(frac))
        raise AmountError(f"malformed amount literal: {value!r}")
    raise AmountError(f"not an amount: {value!r}")


def format_amount(atto: int) -> str:
    """Journal rendering: plain decimal string of the atto-share integer."""
    if atto < 0:
        raise AmountError(f"negative amount: {atto}")
    return str(atto)


def format_shares(atto: int) -> str:
    """Human rendering in whole units, trailing zeros trimmed ("1.7")."""
    whole, frac = divmod(atto, UNIT)
    if frac == 0:
        return str(whole)
    return f"{whole}.{frac:018d}".rstrip("0")


def share_of(atto: int) -> int:
    """Integer share count implied by a balance (floor division)."""
    return atto // UNIT
