"""NFST registry: the authority mints spectrum assets and reclaims them.

Each operation is split into a validator, which checks preconditions
against the current state and builds the event args, and an applier,
which performs the mutation for that event. The engine emits the event
between the two; replay calls the applier alone.
"""

from sftlock.addresses import Address, ZERO_ADDRESS
from sftlock.costs import CostLedger
from sftlock.errors import (
    AuthorizationError,
    DuplicateSpectrumError,
    InvalidRecipientError,
    NotFoundError,
    StakedAssetError,
)
from sftlock.events import Event
from sftlock.state import NFSTRecord, SystemState


def validate_mint_nfst(
    state: SystemState,
    sma: Address,
    caller: Address,
    to: Address,
    channel: str,
    location: str,
) -> tuple[int, dict]:
    if caller != sma:
        raise AuthorizationError(f"only the SMA may mint NFSTs, caller {caller}")
    if to == ZERO_ADDRESS:
        raise InvalidRecipientError("cannot mint to the zero address")
    if (channel, location) in state.uploaded:
        raise DuplicateSpectrumError(
            f"spectrum ({channel}, {location}) is already uploaded"
        )
    token_id = state.token_counter + 1
    args = {
        "_from": ZERO_ADDRESS,
        "_to": to,
        "_tokenId": str(token_id),
        "_channel": channel,
        "_location": location,
    }
    return token_id, args


def apply_mint_nfst(state: SystemState, event: Event, costs: CostLedger | None) -> None:
    token_id = int(event.args["_tokenId"])
    to = event.args["_to"]
    channel = event.args["_channel"]
    location = event.args["_location"]
    state.nfsts[token_id] = NFSTRecord(
        token_id=token_id, owner=to, channel=channel, location=location
    )
    state.uploaded.add((channel, location))
    state.token_counter = max(state.token_counter, token_id)
    state.minted.append(token_id)
    state.owned.setdefault(to, []).append(token_id)
    state.pu_flags[to] = True
    if costs is not None:
        costs.begin("mint_nfst")
        costs.record("mint_nfst", "slot_write_new", 1)  # token record
        costs.record("mint_nfst", "slot_update", 3)  # key flag, counter, pu flag
        costs.record("mint_nfst", "list_insert", 2)  # minted, owned
        costs.record("mint_nfst", "event_emit", 1)


def validate_reclaim_nfst(
    state: SystemState, sma: Address, caller: Address, token_id: int
) -> dict:
    if caller != sma:
        raise AuthorizationError(f"only the SMA may reclaim NFSTs, caller {caller}")
    record = state.nfsts.get(token_id)
    if record is None or record.reclaimed:
        raise NotFoundError(f"NFST {token_id} does not exist or was reclaimed")
    if record.staked:
        raise StakedAssetError(f"NFST {token_id} is escrowed and cannot be reclaimed")
    return {"_from": sma, "_tokenId": str(token_id)}


def apply_reclaim_nfst(
    state: SystemState, event: Event, costs: CostLedger | None
) -> None:
    token_id = int(event.args["_tokenId"])
    record = state.nfsts[token_id]
    state.uploaded.discard((record.channel, record.location))
    state.minted.remove(token_id)
    state.owned[record.holder].remove(token_id)
    record.reclaimed = True
    former = record.holder
    if not state.owned.get(former) and state.snfst_count(former) == 0:
        state.pu_flags.pop(former, None)
    if costs is not None:
        costs.begin("reclaim_nfst")
        costs.record("reclaim_nfst", "slot_update", 3)  # key flag, reclaim, pu flag
        costs.record("reclaim_nfst", "list_remove", 2)  # minted, owned
        costs.record("reclaim_nfst", "event_emit", 1)


def get_nfst_info(state: SystemState, token_id: int) -> tuple[Address, str, str]:
    """Owner/channel/location triple of a live token; pure read."""
    record = state.nfsts.get(token_id)
    if record is None or record.reclaimed:
        raise NotFoundError(f"NFST {token_id} does not exist or was reclaimed")
    return record.owner, record.channel, record.location
