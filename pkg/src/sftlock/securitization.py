"""Securitization: escrowed NFSTs, SNFST lock state, and SFST share moves.

Staking escrows an NFST and mints its securitized twin (SNFST, same token
id) plus one whole unit of fungible shares in the staker's namespace.
Share transfers whose integer-share delta touches the namespace owner
drive lock/unlock transitions; transfers between other holders never do.

Order lists are kept hygienic eagerly: whenever a token changes lock
state through any path it is purged from the order list its new state
contradicts, so the front entry of each list is always a valid candidate.
"""

from sftlock.addresses import Address, ZERO_ADDRESS
from sftlock.amounts import UNIT, format_amount, share_of
from sftlock.costs import CostLedger
from sftlock.errors import (
    AlreadyStakedError,
    BalanceError,
    InternalConsistencyError,
    InvalidListError,
    InvalidRecipientError,
    InvalidSenderError,
    LedgerError,
    NotFoundError,
    OwnershipError,
    StateError,
)
from sftlock.events import Event, LOCK_SNFST, TRANSFER_SFST, UNLOCK_SNFST
from sftlock.state import SNFSTRecord, SystemState
from sftlock import authorization


# -- staking --

def validate_stake(
    state: SystemState, pu: Address, token_id: int
) -> tuple[dict, dict]:
    """Returns (snfst mint args, sfst mint args) for the two stake events."""
    owner, _channel, _location = authorization.get_nfst_info(state, token_id)
    if owner != pu:
        raise OwnershipError(f"{pu} is not the owner of NFST {token_id}")
    if state.nfsts[token_id].staked:
        raise AlreadyStakedError(f"NFST {token_id} is already staked")
    snfst_args = {
        "_from": ZERO_ADDRESS,
        "_to": pu,
        "_tokenId": str(token_id),
    }
    sfst_args = {
        "_from": ZERO_ADDRESS,
        "_to": pu,
        "_primaryUser": ZERO_ADDRESS,
        "_amount": format_amount(UNIT),
        "_tokenId": str(token_id),
    }
    return snfst_args, sfst_args


def apply_transfer_snfst(
    state: SystemState, event: Event, costs: CostLedger | None
) -> None:
    token_id = int(event.args["_tokenId"])
    pu = event.args["_to"]
    nfst = state.nfsts[token_id]
    nfst.staked = True
    nfst.holder = event.emitter  # escrowed by the emitting contract
    # custody lists follow the holder; ownership stays with the PU and the
    # PU flag survives because the SNFST keeps counting
    state.owned[pu].remove(token_id)
    state.owned.setdefault(event.emitter, []).append(token_id)
    state.origin_owner[token_id] = pu
    state.snfsts[token_id] = SNFSTRecord(
        token_id=token_id,
        primary_user=pu,
        channel=nfst.channel,
        location=nfst.location,
        locked=False,
    )
    state.unlocked_ids.setdefault(pu, []).append(token_id)
    if costs is not None:
        costs.begin("stake")
        costs.record("stake", "slot_read", 1)  # registry metadata lookup
        costs.record("stake", "slot_write_new", 2)  # SNFST record, origin owner
        costs.record("stake", "slot_update", 2)  # staking flag, holder
        costs.record("stake", "list_remove", 1)  # custody out of the PU list
        costs.record("stake", "list_insert", 2)  # custody in, unlocked list
        costs.record("stake", "event_emit", 1)


# -- fungible share moves --

def validate_transfer_sfst(
    state: SystemState, from_: Address, to: Address, pu: Address, amount: int
) -> dict:
    if amount < 0:
        raise BalanceError(f"negative amount: {amount}")
    if from_ == ZERO_ADDRESS:
        raise InvalidSenderError("the zero address cannot send shares")
    if to == ZERO_ADDRESS:
        raise InvalidRecipientError("cannot transfer shares to the zero address")
    held = state.balance_of(pu, from_)
    if held < amount:
        raise BalanceError(
            f"{from_} holds {held} atto-shares of {pu}, needs {amount}"
        )
    return {
        "_from": from_,
        "_to": to,
        "_primaryUser": pu,
        "_amount": format_amount(amount),
    }


def apply_transfer_sfst(
    state: SystemState, event: Event, costs: CostLedger | None
) -> None:
    from_ = event.args["_from"]
    to = event.args["_to"]
    amount = int(event.args["_amount"])
    if from_ == ZERO_ADDRESS:
        # share mint during stake; the namespace is the recipient's own
        pu = to
        holders = state.balances.setdefault(pu, {})
        holders[to] = holders.get(to, 0) + amount
        state.total_supply[pu] = state.total_supply.get(pu, 0) + amount
        if costs is not None:
            costs.begin("stake_mint_sfst")
            costs.record("stake_mint_sfst", "slot_update", 2)  # balance, supply
            costs.record("stake_mint_sfst", "event_emit", 1)
        return
    pu = event.args["_primaryUser"]
    holders = state.balances.setdefault(pu, {})
    held = holders.get(from_, 0)
    if held < amount:
        raise ValueError(f"balance underflow for {from_} in namespace {pu}")
    holders[from_] = held - amount
    holders[to] = holders.get(to, 0) + amount
    if costs is not None:
        costs.begin("transfer")
        costs.record("transfer", "slot_update", 2)  # two balance slots
        costs.record("transfer", "event_emit", 1)


# -- lock / unlock transitions --

def validate_lock(state: SystemState, pu: Address, token_id: int) -> dict:
    record = state.snfsts.get(token_id)
    if record is None:
        raise NotFoundError(f"SNFST {token_id} does not exist")
    if record.primary_user != pu:
        raise OwnershipError(f"SNFST {token_id} does not belong to {pu}")
    if record.locked:
        raise StateError(f"SNFST {token_id} is already locked")
    return {"_primaryUser": pu, "_tokenId": str(token_id)}


def validate_unlock(state: SystemState, pu: Address, token_id: int) -> dict:
    record = state.snfsts.get(token_id)
    if record is None:
        raise NotFoundError(f"SNFST {token_id} does not exist")
    if record.primary_user != pu:
        raise OwnershipError(f"SNFST {token_id} does not belong to {pu}")
    if not record.locked:
        raise StateError(f"SNFST {token_id} is already unlocked")
    return {"_primaryUser": pu, "_tokenId": str(token_id)}


def apply_lock(state: SystemState, event: Event, costs: CostLedger | None) -> None:
    pu = event.args["_primaryUser"]
    token_id = int(event.args["_tokenId"])
    state.snfsts[token_id].locked = True
    state.unlocked_ids[pu].remove(token_id)
    state.locked_ids.setdefault(pu, []).append(token_id)
    purged = _purge(state.lock_order.get(pu), token_id)
    if costs is not None:
        costs.begin("lock")
        costs.record("lock", "slot_update", 1)  # lock flag
        costs.record("lock", "list_remove", 2 if purged else 1)
        costs.record("lock", "list_insert", 1)
        costs.record("lock", "event_emit", 1)


def apply_unlock(state: SystemState, event: Event, costs: CostLedger | None) -> None:
    pu = event.args["_primaryUser"]
    token_id = int(event.args["_tokenId"])
    state.snfsts[token_id].locked = False
    state.locked_ids[pu].remove(token_id)
    state.unlocked_ids.setdefault(pu, []).append(token_id)
    purged = _purge(state.unlock_order.get(pu), token_id)
    if costs is not None:
        costs.begin("unlock")
        costs.record("unlock", "slot_update", 1)
        costs.record("unlock", "list_remove", 2 if purged else 1)
        costs.record("unlock", "list_insert", 1)
        costs.record("unlock", "event_emit", 1)


def _purge(order: list[int] | None, token_id: int) -> bool:
    if order and token_id in order:
        order.remove(token_id)
        return True
    return False


# -- priority order lists --

def validate_set_lock_order(
    state: SystemState, caller: Address, token_ids: list[int]
) -> dict:
    _check_order_list(state, caller, token_ids, want_locked=False)
    return {"_primaryUser": caller, "_tokenIds": [str(t) for t in token_ids]}


def validate_set_unlock_order(
    state: SystemState, caller: Address, token_ids: list[int]
) -> dict:
    _check_order_list(state, caller, token_ids, want_locked=True)
    return {"_primaryUser": caller, "_tokenIds": [str(t) for t in token_ids]}


def _check_order_list(
    state: SystemState, caller: Address, token_ids: list[int], want_locked: bool
) -> None:
    if len(set(token_ids)) != len(token_ids):
        raise InvalidListError(f"duplicate token ids in order list: {token_ids}")
    for token_id in token_ids:
        record = state.snfsts.get(token_id)
        if record is None:
            raise NotFoundError(f"SNFST {token_id} does not exist")
        if record.primary_user != caller:
            raise OwnershipError(f"SNFST {token_id} does not belong to {caller}")
        if record.locked != want_locked:
            wanted = "locked" if want_locked else "unlocked"
            raise StateError(f"SNFST {token_id} is not currently {wanted}")


def apply_set_lock_order(
    state: SystemState, event: Event, costs: CostLedger | None
) -> None:
    pu = event.args["_primaryUser"]
    state.lock_order[pu] = [int(t) for t in event.args["_tokenIds"]]
    if costs is not None:
        costs.begin("set_lock_order")
        costs.record("set_lock_order", "slot_update", 1)
        costs.record("set_lock_order", "event_emit", 1)


def apply_set_unlock_order(
    state: SystemState, event: Event, costs: CostLedger | None
) -> None:
    pu = event.args["_primaryUser"]
    state.unlock_order[pu] = [int(t) for t in event.args["_tokenIds"]]
    if costs is not None:
        costs.begin("set_unlock_order")
        costs.record("set_unlock_order", "slot_update", 1)
        costs.record("set_unlock_order", "event_emit", 1)


# -- the share-delta transfer engine --

def run_transfer(state, emit, from_: Address, to: Address, pu: Address, amount: int):
    """Move shares, then map the namespace owner's integer-share delta
    onto lock/unlock transitions (order lists consumed front-first).

    `emit` appends and applies one event; the loop re-reads state after
    every transition so each front entry is fresh.
    """
    args = validate_transfer_sfst(state, from_, to, pu, amount)
    old_from = share_of(state.balance_of(pu, from_))
    old_to = share_of(state.balance_of(pu, to))
    emit(TRANSFER_SFST, args)
    new_from = share_of(state.balance_of(pu, from_))
    new_to = share_of(state.balance_of(pu, to))

    if from_ == pu:
        lock_num = max(0, old_from - new_from)
        ordered = min(lock_num, len(state.lock_order.get(pu, ())))
        for _ in range(ordered):
            _transition(state, emit, pu, state.lock_order[pu][0], lock=True)
        for _ in range(lock_num - ordered):
            _transition(state, emit, pu, _front(state.unlocked_ids, pu), lock=True)

    if to == pu:
        unlock_num = max(0, new_to - old_to)
        ordered = min(unlock_num, len(state.unlock_order.get(pu, ())))
        for _ in range(ordered):
            _transition(state, emit, pu, state.unlock_order[pu][0], lock=False)
        for _ in range(unlock_num - ordered):
            _transition(state, emit, pu, _front(state.locked_ids, pu), lock=False)


def _front(lists: dict[Address, list[int]], pu: Address) -> int:
    ids = lists.get(pu)
    if not ids:
        raise InternalConsistencyError(
            f"no transition candidate available for {pu}"
        )
    return ids[0]


def _transition(state, emit, pu: Address, token_id: int, lock: bool) -> None:
    try:
        if lock:
            emit(LOCK_SNFST, validate_lock(state, pu, token_id))
        else:
            emit(UNLOCK_SNFST, validate_unlock(state, pu, token_id))
    except LedgerError as exc:
        raise InternalConsistencyError(
            f"transition candidate {token_id} rejected: {exc}"
        ) from exc
