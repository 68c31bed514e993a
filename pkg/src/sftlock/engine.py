"""The ledger engine: one serialized command stream over shared state.

Commands validate against the live state, then emit events; every
mutation happens inside the per-kind applier the emitted event is routed
through. Replaying a journal routes the same events through the same
appliers, which is why the replayed digest always matches the live one.
"""

from pathlib import Path

from sftlock import authorization, securitization, sharing
from sftlock.addresses import (
    Address,
    AUTHORIZATION_CONTRACT,
    SECURITIZATION_CONTRACT,
    SHARING_CONTRACT,
    derive_address,
)
from sftlock.amounts import share_of
from sftlock.costs import CostLedger
from sftlock.errors import ReplayError
from sftlock.events import (
    Event,
    LOCK_SNFST,
    MINT_NFST,
    MINT_RNFST,
    RECLAIM_NFST,
    SET_LOCK_ORDER,
    SET_UNLOCK_ORDER,
    TRANSFER_SFST,
    TRANSFER_SNFST,
    UNLOCK_SNFST,
    UPDATE_USER,
    references_token,
)
from sftlock.journal import Journal
from sftlock.state import SystemState

APPLIERS = {
    MINT_NFST: authorization.apply_mint_nfst,
    RECLAIM_NFST: authorization.apply_reclaim_nfst,
    TRANSFER_SNFST: securitization.apply_transfer_snfst,
    TRANSFER_SFST: securitization.apply_transfer_sfst,
    LOCK_SNFST: securitization.apply_lock,
    UNLOCK_SNFST: securitization.apply_unlock,
    SET_LOCK_ORDER: securitization.apply_set_lock_order,
    SET_UNLOCK_ORDER: securitization.apply_set_unlock_order,
    MINT_RNFST: sharing.apply_mint_rnfst,
    UPDATE_USER: sharing.apply_update_user,
}

DEFAULT_SMA = derive_address("SMA")


def apply_event(
    state: SystemState, event: Event, costs: CostLedger | None = None
) -> None:
    APPLIERS[event.kind](state, event, costs)


class LedgerEngine:
    def __init__(
        self,
        sma: Address = DEFAULT_SMA,
        costs: CostLedger | None = None,
        authorization_contract: Address = AUTHORIZATION_CONTRACT,
        securitization_contract: Address = SECURITIZATION_CONTRACT,
        sharing_contract: Address = SHARING_CONTRACT,
    ):
        self.sma = sma
        self.costs = costs if costs is not None else CostLedger()
        self.state = SystemState()
        self.journal = Journal()
        self._emitters = {
            MINT_NFST: authorization_contract,
            RECLAIM_NFST: authorization_contract,
            TRANSFER_SNFST: securitization_contract,
            TRANSFER_SFST: securitization_contract,
            LOCK_SNFST: securitization_contract,
            UNLOCK_SNFST: securitization_contract,
            SET_LOCK_ORDER: securitization_contract,
            SET_UNLOCK_ORDER: securitization_contract,
            MINT_RNFST: sharing_contract,
            UPDATE_USER: sharing_contract,
        }

    def _emit(self, kind: str, args: dict) -> Event:
        event = Event(
            sequence=len(self.journal),
            emitter=self._emitters[kind],
            kind=kind,
            args=args,
        )
        self.journal.append(event)
        apply_event(self.state, event, self.costs)
        return event

    # -- authorization --

    def mint_nfst(
        self, caller: Address, to: Address, channel: str, location: str
    ) -> int:
        token_id, args = authorization.validate_mint_nfst(
            self.state, self.sma, caller, to, channel, location
        )
        self._emit(MINT_NFST, args)
        return token_id

    def reclaim_nfst(self, caller: Address, token_id: int) -> None:
        args = authorization.validate_reclaim_nfst(
            self.state, self.sma, caller, token_id
        )
        self._emit(RECLAIM_NFST, args)

    def get_nfst_info(self, token_id: int) -> tuple[Address, str, str]:
        return authorization.get_nfst_info(self.state, token_id)

    # -- securitization --

    def stake_nfst(self, caller: Address, token_id: int) -> None:
        snfst_args, sfst_args = securitization.validate_stake(
            self.state, caller, token_id
        )
        self._emit(TRANSFER_SNFST, snfst_args)
        self._emit(TRANSFER_SFST, sfst_args)

    def lock_snfst(self, pu: Address, token_id: int, is_order: bool = False) -> None:
        # is_order mirrors the two transfer-loop call sites; eager order-list
        # hygiene makes the mutation identical either way
        args = securitization.validate_lock(self.state, pu, token_id)
        self._emit(LOCK_SNFST, args)

    def unlock_snfst(self, pu: Address, token_id: int, is_order: bool = False) -> None:
        args = securitization.validate_unlock(self.state, pu, token_id)
        self._emit(UNLOCK_SNFST, args)

    def set_lock_order(self, caller: Address, token_ids: list[int]) -> None:
        args = securitization.validate_set_lock_order(self.state, caller, token_ids)
        self._emit(SET_LOCK_ORDER, args)

    def set_unlock_order(self, caller: Address, token_ids: list[int]) -> None:
        args = securitization.validate_set_unlock_order(self.state, caller, token_ids)
        self._emit(SET_UNLOCK_ORDER, args)

    def transfer_sfst(
        self, from_: Address, to: Address, pu: Address, amount: int
    ) -> None:
        args = securitization.validate_transfer_sfst(
            self.state, from_, to, pu, amount
        )
        self._emit(TRANSFER_SFST, args)

    def transfer(self, from_: Address, to: Address, pu: Address, amount: int) -> None:
        securitization.run_transfer(self.state, self._emit, from_, to, pu, amount)

    # -- sharing --

    def mint_rnfst(self, caller: Address) -> int:
        token_id, args = sharing.validate_mint_rnfst(self.state, caller)
        self._emit(MINT_RNFST, args)
        return token_id

    def set_user(
        self, caller: Address, token_id: int, user: Address, expires: int, now: int
    ) -> None:
        args = sharing.validate_set_user(
            self.state, caller, token_id, user, expires, now
        )
        self._emit(UPDATE_USER, args)

    def user_of(self, token_id: int, now: int) -> Address:
        return sharing.user_of(self.state, token_id, now)

    # -- queries --

    def balance_of(self, pu: Address, holder: Address) -> int:
        return self.state.balance_of(pu, holder)

    def share_of_holder(self, pu: Address, holder: Address) -> int:
        return share_of(self.state.balance_of(pu, holder))

    def total_supply_of(self, pu: Address) -> int:
        return self.state.total_supply.get(pu, 0)

    def locked_of(self, pu: Address) -> list[int]:
        return list(self.state.locked_ids.get(pu, ()))

    def unlocked_of(self, pu: Address) -> list[int]:
        return list(self.state.unlocked_ids.get(pu, ()))

    def lock_order_of(self, pu: Address) -> list[int]:
        return list(self.state.lock_order.get(pu, ()))

    def unlock_order_of(self, pu: Address) -> list[int]:
        return list(self.state.unlock_order.get(pu, ()))

    def origin_owner_of(self, token_id: int) -> Address | None:
        return self.state.origin_owner.get(token_id)

    def snfst_ids_of(self, pu: Address) -> set[int]:
        return set(self.state.locked_ids.get(pu, ())) | set(
            self.state.unlocked_ids.get(pu, ())
        )

    def is_pu(self, address: Address) -> bool:
        return self.state.is_pu(address)

    def digest(self) -> str:
        return self.state.digest()

    def canonical_state(self) -> dict:
        return self.state.canonical()

    # -- ledger-core: replay and trace --

    @classmethod
    def replay(
        cls, journal: Journal, costs: CostLedger | None = None
    ) -> "LedgerEngine":
        """Rebuild state by re-applying every journal event in order."""
        engine = cls(costs=costs if costs is not None else CostLedger())
        for expected, event in enumerate(journal):
            if event.sequence != expected:
                raise ReplayError(
                    f"journal sequence gap: expected {expected}, "
                    f"found {event.sequence}",
                    sequence=expected,
                )
            try:
                apply_event(engine.state, event, engine.costs)
            except ReplayError:
                raise
            except Exception as exc:
                raise ReplayError(
                    f"cannot apply event at sequence {event.sequence}: {exc}",
                    sequence=event.sequence,
                ) from exc
            engine.journal.append(event)
        return engine

    @classmethod
    def replay_file(cls, path: str | Path) -> "LedgerEngine":
        return cls.replay(Journal.load(path))

    def trace(self, token_id: int) -> list[Event]:
        return trace_events(self.journal, token_id)


def trace_events(journal: Journal, token_id: int) -> list[Event]:
    """All events whose args reference the token id, in sequence order."""
    return [event for event in journal if references_token(event, token_id)]
