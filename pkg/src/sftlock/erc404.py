"""ERC-404-style hybrid ledger: fungible balances coupled to NFT mint/burn.

The differential foil: whenever a balance crosses a whole-unit threshold,
the holder's NFTs are destroyed or fresh ones created, so token ids do
not survive a round trip. One global fungible pool, no namespaces.

Burn takes ids from the front of the holder's list, mirroring the lock
engine's default selection so the only behavioral difference under
comparison is mint/burn versus lock/unlock.
"""

from sftlock.addresses import Address, ZERO_ADDRESS
from sftlock.amounts import UNIT, share_of
from sftlock.costs import CostLedger
from sftlock.errors import AmountError, BalanceError, InvalidRecipientError


class HybridLedger:
    def __init__(self, costs: CostLedger | None = None):
        self.balances: dict[Address, int] = {}
        self.held: dict[Address, list[int]] = {}
        self.owner_of: dict[int, Address] = {}
        self.counter = 0
        self.burned: set[int] = set()
        self.costs = costs if costs is not None else CostLedger()

    # -- operations --

    def mint(self, to: Address, units: int) -> list[int]:
        """Credit whole units and create one fresh NFT per unit."""
        if to == ZERO_ADDRESS:
            raise InvalidRecipientError("cannot mint to the zero address")
        if units < 1:
            raise AmountError(f"mint units must be >= 1, got {units}")
        self.balances[to] = self.balances.get(to, 0) + units * UNIT
        self.costs.begin("transfer")
        self.costs.record("transfer", "slot_update", 1)  # balance credit
        self.costs.record("transfer", "event_emit", 1)
        return [self._mint_one(to) for _ in range(units)]

    def transfer(self, from_: Address, to: Address, amount: int) -> tuple[list[int], list[int]]:
        """Move balance; burn/mint NFTs on whole-unit threshold crossings.

        Returns (burned ids, minted ids) for differential inspection.
        """
        if to == ZERO_ADDRESS:
            raise InvalidRecipientError("cannot transfer to the zero address")
        if amount < 0:
            raise BalanceError(f"negative amount: {amount}")
        held = self.balances.get(from_, 0)
        if held < amount:
            raise BalanceError(f"{from_} holds {held}, needs {amount}")
        old_from = share_of(self.balances.get(from_, 0))
        old_to = share_of(self.balances.get(to, 0))
        self.balances[from_] = held - amount
        self.balances[to] = self.balances.get(to, 0) + amount
        self.costs.begin("transfer")
        self.costs.record("transfer", "slot_update", 2)
        self.costs.record("transfer", "event_emit", 1)
        new_from = share_of(self.balances[from_])
        new_to = share_of(self.balances[to])

        burned = [self._burn_front(from_) for _ in range(max(0, old_from - new_from))]
        minted = [self._mint_one(to) for _ in range(max(0, new_to - old_to))]
        return burned, minted

    def _mint_one(self, to: Address) -> int:
        self.counter += 1
        token_id = self.counter
        self.owner_of[token_id] = to
        self.held.setdefault(to, []).append(token_id)
        self.costs.begin("mint")
        self.costs.record("mint", "slot_write_new", 1)  # owner record
        self.costs.record("mint", "slot_update", 1)  # id counter
        self.costs.record("mint", "list_insert", 1)
        self.costs.record("mint", "event_emit", 1)
        return token_id

    def _burn_front(self, from_: Address) -> int:
        token_id = self.held[from_].pop(0)
        del self.owner_of[token_id]
        self.burned.add(token_id)
        self.costs.begin("burn")
        self.costs.record("burn", "slot_delete", 1)  # owner record
        self.costs.record("burn", "list_remove", 1)
        self.costs.record("burn", "event_emit", 1)
        return token_id

    # -- queries --

    def balance(self, address: Address) -> int:
        return self.balances.get(address, 0)

    def share(self, address: Address) -> int:
        return share_of(self.balances.get(address, 0))

    def held_ids(self, address: Address) -> list[int]:
        return list(self.held.get(address, ()))

    def nft_count(self, address: Address) -> int:
        return len(self.held.get(address, ()))

    def all_held_ids(self) -> set[int]:
        return set(self.owner_of)
