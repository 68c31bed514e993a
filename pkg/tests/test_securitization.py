import pytest

from sftlock.addresses import ZERO_ADDRESS, derive_address
from sftlock.amounts import UNIT
from sftlock.errors import (
    AlreadyStakedError,
    BalanceError,
    InvalidListError,
    InvalidRecipientError,
    InvalidSenderError,
    NotFoundError,
    OwnershipError,
    StateError,
)
from sftlock.events import (
    LOCK_SNFST,
    SET_LOCK_ORDER,
    TRANSFER_SFST,
    TRANSFER_SNFST,
    UNLOCK_SNFST,
)

from conftest import PU, SMA, SU, SU2


def events_of_kind(engine, kind):
    return [e for e in engine.journal if e.kind == kind]


class TestStake:
    def test_stake_emits_snfst_then_sfst_mint(self, engine):
        engine.mint_nfst(SMA, PU, "ch17", "zone-A")
        engine.stake_nfst(PU, 1)
        snfst, sfst = engine.journal.entries[-2:]
        assert snfst.kind == TRANSFER_SNFST
        assert snfst.args["_from"] == ZERO_ADDRESS
        assert snfst.args["_to"] == PU
        assert snfst.args["_tokenId"] == "1"
        assert sfst.kind == TRANSFER_SFST
        assert sfst.args["_from"] == ZERO_ADDRESS
        assert sfst.args["_amount"] == "1000000000000000000"
        assert engine.balance_of(PU, PU) == UNIT
        assert engine.unlocked_of(PU) == [1]

    def test_double_stake_rejected(self, engine):
        engine.mint_nfst(SMA, PU, "ch17", "zone-A")
        engine.stake_nfst(PU, 1)
        with pytest.raises(AlreadyStakedError):
            engine.stake_nfst(PU, 1)

    def test_non_owner_cannot_stake(self, engine):
        engine.mint_nfst(SMA, PU, "ch17", "zone-A")
        with pytest.raises(OwnershipError):
            engine.stake_nfst(SU, 1)

    def test_reclaimed_token_cannot_stake(self, engine):
        engine.mint_nfst(SMA, PU, "ch17", "zone-A")
        engine.reclaim_nfst(SMA, 1)
        with pytest.raises(NotFoundError):
            engine.stake_nfst(PU, 1)

    def test_origin_owner_recorded(self, engine):
        engine.mint_nfst(SMA, PU, "ch17", "zone-A")
        engine.stake_nfst(PU, 1)
        assert engine.origin_owner_of(1) == PU


class TestLockUnlock:
    def test_lock_event_shape(self, staked_pair):
        staked_pair.lock_snfst(PU, 2)
        event = staked_pair.journal.entries[-1]
        assert event.kind == LOCK_SNFST
        assert event.args == {"_primaryUser": PU, "_tokenId": "2"}
        assert staked_pair.locked_of(PU) == [2]
        assert staked_pair.unlocked_of(PU) == [1]

    def test_double_lock_rejected(self, staked_pair):
        staked_pair.lock_snfst(PU, 2)
        with pytest.raises(StateError):
            staked_pair.lock_snfst(PU, 2)

    def test_lock_purges_order_entry(self, staked_pair):
        staked_pair.set_lock_order(PU, [2, 1])
        staked_pair.lock_snfst(PU, 2, is_order=True)
        assert staked_pair.lock_order_of(PU) == [1]

    def test_lock_purges_order_even_without_flag(self, staked_pair):
        # eager hygiene: a stale entry would corrupt front-of-list selection
        staked_pair.set_lock_order(PU, [2, 1])
        staked_pair.lock_snfst(PU, 2, is_order=False)
        assert staked_pair.lock_order_of(PU) == [1]

    def test_unlock_event_shape(self, staked_pair):
        staked_pair.lock_snfst(PU, 2)
        staked_pair.unlock_snfst(PU, 2)
        event = staked_pair.journal.entries[-1]
        assert event.kind == UNLOCK_SNFST
        assert event.args == {"_primaryUser": PU, "_tokenId": "2"}

    def test_unlock_of_unlocked_rejected(self, staked_pair):
        with pytest.raises(StateError):
            staked_pair.unlock_snfst(PU, 1)

    def test_unlock_purges_unlock_order(self, staked_pair):
        staked_pair.lock_snfst(PU, 2)
        staked_pair.set_unlock_order(PU, [2])
        staked_pair.unlock_snfst(PU, 2, is_order=True)
        assert staked_pair.unlock_order_of(PU) == []

    def test_wrong_primary_user_rejected(self, staked_pair):
        with pytest.raises(OwnershipError):
            staked_pair.lock_snfst(SU, 2)


class TestOrderLists:
    def test_set_lock_order_replaces_wholesale(self, staked_pair):
        staked_pair.set_lock_order(PU, [2, 1])
        assert staked_pair.lock_order_of(PU) == [2, 1]
        event = staked_pair.journal.entries[-1]
        assert event.kind == SET_LOCK_ORDER
        assert event.args == {"_primaryUser": PU, "_tokenIds": ["2", "1"]}
        staked_pair.set_lock_order(PU, [1])
        assert staked_pair.lock_order_of(PU) == [1]

    def test_empty_list_clears(self, staked_pair):
        staked_pair.set_lock_order(PU, [2, 1])
        staked_pair.set_lock_order(PU, [])
        assert staked_pair.lock_order_of(PU) == []

    def test_locked_id_rejected_in_lock_order(self, staked_pair):
        staked_pair.lock_snfst(PU, 1)
        with pytest.raises(StateError):
            staked_pair.set_lock_order(PU, [1])

    def test_duplicate_ids_rejected(self, staked_pair):
        with pytest.raises(InvalidListError):
            staked_pair.set_lock_order(PU, [1, 1])

    def test_non_owned_id_rejected(self, staked_pair):
        with pytest.raises(OwnershipError):
            staked_pair.set_lock_order(SU, [1])

    def test_set_unlock_order_requires_locked(self, staked_pair):
        with pytest.raises(StateError):
            staked_pair.set_unlock_order(PU, [2])
        staked_pair.transfer(PU, SU, PU, 3 * 10**17)  # locks one token
        locked = staked_pair.locked_of(PU)
        staked_pair.set_unlock_order(PU, locked)
        assert staked_pair.unlock_order_of(PU) == locked


class TestTransferSfst:
    def test_amount_rendered_as_decimal_string(self, staked_pair):
        staked_pair.transfer_sfst(PU, SU, PU, 3 * 10**17)
        event = staked_pair.journal.entries[-1]
        assert event.args["_amount"] == "300000000000000000"
        assert event.args["_primaryUser"] == PU

    def test_zero_amount_moves_nothing_but_emits(self, staked_pair):
        before = len(staked_pair.journal)
        staked_pair.transfer_sfst(PU, SU, PU, 0)
        assert len(staked_pair.journal) == before + 1
        assert staked_pair.balance_of(PU, SU) == 0

    def test_overdraw_rejected(self, staked_pair):
        with pytest.raises(BalanceError):
            staked_pair.transfer_sfst(PU, SU, PU, 3 * UNIT)

    def test_zero_recipient_rejected(self, staked_pair):
        with pytest.raises(InvalidRecipientError):
            staked_pair.transfer_sfst(PU, ZERO_ADDRESS, PU, 1)

    def test_zero_sender_rejected(self, staked_pair):
        with pytest.raises(InvalidSenderError):
            staked_pair.transfer_sfst(ZERO_ADDRESS, SU, PU, 0)


class TestTransferEngine:
    def test_outflow_locks_exactly_one_ordered_token(self, staked_pair):
        staked_pair.set_lock_order(PU, [2, 1])
        staked_pair.transfer(PU, SU, PU, 3 * 10**17)
        assert staked_pair.balance_of(PU, PU) == 17 * 10**17
        assert staked_pair.balance_of(PU, SU) == 3 * 10**17
        locks = events_of_kind(staked_pair, LOCK_SNFST)
        assert [e.args["_tokenId"] for e in locks] == ["2"]

    def test_return_flow_unlocks_exactly_one(self, staked_pair):
        staked_pair.set_lock_order(PU, [2, 1])
        staked_pair.transfer(PU, SU, PU, 3 * 10**17)
        staked_pair.transfer(SU, PU, PU, 3 * 10**17)
        assert staked_pair.balance_of(PU, PU) == 2 * UNIT
        assert staked_pair.balance_of(PU, SU) == 0
        unlocks = events_of_kind(staked_pair, UNLOCK_SNFST)
        assert [e.args["_tokenId"] for e in unlocks] == ["2"]
        assert staked_pair.snfst_ids_of(PU) == {1, 2}

    def test_multi_unit_outflow_follows_order_then_default(self, staked_pair):
        staked_pair.set_lock_order(PU, [2, 1])
        staked_pair.transfer(PU, SU, PU, 13 * 10**17)
        locks = events_of_kind(staked_pair, LOCK_SNFST)
        assert [e.args["_tokenId"] for e in locks] == ["2", "1"]

    def test_no_order_locks_front_of_unlocked(self, staked_pair):
        staked_pair.transfer(PU, SU, PU, 13 * 10**17)
        locks = events_of_kind(staked_pair, LOCK_SNFST)
        assert [e.args["_tokenId"] for e in locks] == ["1", "2"]

    def test_order_shorter_than_delta_falls_back_to_front(self, staked_pair):
        staked_pair.set_lock_order(PU, [2])
        staked_pair.transfer(PU, SU, PU, 2 * UNIT)
        locks = events_of_kind(staked_pair, LOCK_SNFST)
        assert [e.args["_tokenId"] for e in locks] == ["2", "1"]

    def test_su_to_su_never_transitions(self, staked_pair):
        staked_pair.transfer(PU, SU, PU, 8 * 10**17)
        before = len(staked_pair.journal)
        staked_pair.transfer(SU, SU2, PU, 2 * 10**17)
        emitted = staked_pair.journal.entries[before:]
        assert [e.kind for e in emitted] == [TRANSFER_SFST]
        assert staked_pair.balance_of(PU, SU) == 6 * 10**17
        assert staked_pair.balance_of(PU, SU2) == 2 * 10**17

    def test_self_transfer_is_share_noop(self, staked_pair):
        before_locked = staked_pair.locked_of(PU)
        staked_pair.transfer(PU, PU, PU, 15 * 10**17)
        assert staked_pair.balance_of(PU, PU) == 2 * UNIT
        assert staked_pair.locked_of(PU) == before_locked

    def test_fractional_sweep_locks_both_units(self, staked_pair):
        # 2.0 -> 0.0 crosses two thresholds in one move
        staked_pair.transfer(PU, SU, PU, 2 * UNIT)
        assert len(events_of_kind(staked_pair, LOCK_SNFST)) == 2
        assert staked_pair.unlocked_of(PU) == []

    def test_cross_namespace_holdings_do_not_interact(self, engine):
        pu2 = derive_address("PU2")
        engine.mint_nfst(SMA, PU, "ch17", "zone-A")
        engine.mint_nfst(SMA, pu2, "ch18", "zone-A")
        engine.stake_nfst(PU, 1)
        engine.stake_nfst(pu2, 2)
        engine.transfer(PU, SU, PU, UNIT)
        engine.transfer(pu2, SU, pu2, 4 * 10**17)
        # SU now holds balances in both namespaces
        assert engine.balance_of(PU, SU) == UNIT
        assert engine.balance_of(pu2, SU) == 4 * 10**17
        assert engine.locked_of(PU) == [1]
        assert engine.locked_of(pu2) == [2]
        # a cross-holder moving shares transitions nothing in either book
        before = len(engine.journal)
        engine.transfer(SU, SU2, pu2, 2 * 10**17)
        engine.transfer(SU, SU2, PU, UNIT)
        kinds = [e.kind for e in engine.journal.entries[before:]]
        assert kinds == [TRANSFER_SFST, TRANSFER_SFST]
        assert engine.locked_of(PU) == [1]
        assert engine.locked_of(pu2) == [2]


class TestQueries:
    def test_round_trip_share(self, staked_pair):
        staked_pair.transfer(PU, SU, PU, 3 * 10**17)
        staked_pair.transfer(SU, PU, PU, 3 * 10**17)
        assert staked_pair.share_of_holder(PU, PU) == 2

    def test_stranger_reads_zero(self, staked_pair):
        assert staked_pair.balance_of(PU, derive_address("nobody")) == 0
        assert staked_pair.locked_of(derive_address("nobody")) == []

    def test_partition_and_coupling_hold(self, staked_pair):
        staked_pair.transfer(PU, SU, PU, 13 * 10**17)
        locked, unlocked = staked_pair.locked_of(PU), staked_pair.unlocked_of(PU)
        assert len(locked) + len(unlocked) == staked_pair.total_supply_of(PU) // UNIT
        assert len(unlocked) == staked_pair.share_of_holder(PU, PU)
