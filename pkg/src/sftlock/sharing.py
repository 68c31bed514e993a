"""Rentable spectrum tokens: time-bounded usage grants for secondary users.

A registered PU mints rental tokens and assigns a user with an expiry
timestamp. Time is an explicit logical-clock parameter, never wall clock,
so runs stay deterministic. Rentals never touch securitization state.
"""

from sftlock.addresses import Address, ZERO_ADDRESS
from sftlock.costs import CostLedger
from sftlock.errors import AuthorizationError, InvalidExpiryError, NotFoundError
from sftlock.events import Event
from sftlock.state import RNFSTRecord, SystemState


def validate_mint_rnfst(state: SystemState, caller: Address) -> tuple[int, dict]:
    if not state.is_pu(caller):
        raise AuthorizationError(f"{caller} is not a registered PU")
    token_id = state.rnfst_counter + 1
    return token_id, {"_to": caller, "_tokenId": str(token_id)}


def apply_mint_rnfst(
    state: SystemState, event: Event, costs: CostLedger | None
) -> None:
    token_id = int(event.args["_tokenId"])
    owner = event.args["_to"]
    state.rnfsts[token_id] = RNFSTRecord(
        token_id=token_id, owner=owner, user=ZERO_ADDRESS, expires=0
    )
    state.rnfst_counter = max(state.rnfst_counter, token_id)
    if costs is not None:
        costs.begin("mint_rnfst")
        costs.record("mint_rnfst", "slot_write_new", 1)
        costs.record("mint_rnfst", "slot_update", 1)  # counter
        costs.record("mint_rnfst", "event_emit", 1)


def validate_set_user(
    state: SystemState,
    caller: Address,
    token_id: int,
    user: Address,
    expires: int,
    now: int,
) -> dict:
    record = state.rnfsts.get(token_id)
    if record is None:
        raise NotFoundError(f"RNFST {token_id} does not exist")
    if record.owner != caller:
        raise AuthorizationError(f"{caller} does not own RNFST {token_id}")
    if expires <= now:
        raise InvalidExpiryError(f"expiry {expires} is not after now {now}")
    return {"_tokenId": str(token_id), "_user": user, "_expires": str(expires)}


def apply_update_user(
    state: SystemState, event: Event, costs: CostLedger | None
) -> None:
    record = state.rnfsts[int(event.args["_tokenId"])]
    record.user = event.args["_user"]
    record.expires = int(event.args["_expires"])
    if costs is not None:
        costs.begin("update_user")
        costs.record("update_user", "slot_update", 2)  # user, expires
        costs.record("update_user", "event_emit", 1)


def user_of(state: SystemState, token_id: int, now: int) -> Address:
    """Current renter, or the zero address at/after expiry (exclusive bound)."""
    record = state.rnfsts.get(token_id)
    if record is None:
        raise NotFoundError(f"RNFST {token_id} does not exist")
    if record.user != ZERO_ADDRESS and now < record.expires:
        return record.user
    return ZERO_ADDRESS
