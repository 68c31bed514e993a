"""System state: every mapping the engine mutates, plus its canonical digest.

The state is mutated exclusively by the event appliers (one per event
kind, living next to their command validators in the per-module files),
which is what makes journal replay reproduce the live state bit for bit.
"""

import hashlib
import json
from dataclasses import dataclass, field

from sftlock.addresses import Address
from sftlock.amounts import format_amount


@dataclass
class NFSTRecord:
    token_id: int
    owner: Address
    channel: str
    location: str
    staked: bool = False
    holder: Address = ""
    reclaimed: bool = False

    def __post_init__(self):
        if not self.holder:
            self.holder = self.owner


@dataclass
class SNFSTRecord:
    token_id: int
    primary_user: Address
    channel: str
    location: str
    locked: bool = False


@dataclass
class RNFSTRecord:
    token_id: int
    owner: Address
    user: Address
    expires: int = 0


@dataclass
class SystemState:
    # authorization registry
    nfsts: dict[int, NFSTRecord] = field(default_factory=dict)
    uploaded: set = field(default_factory=set)  # live (channel, location) keys
    token_counter: int = 0
    minted: list[int] = field(default_factory=list)
    owned: dict[Address, list[int]] = field(default_factory=dict)
    pu_flags: dict[Address, bool] = field(default_factory=dict)
    # securitization
    snfsts: dict[int, SNFSTRecord] = field(default_factory=dict)
    balances: dict[Address, dict[Address, int]] = field(default_factory=dict)
    total_supply: dict[Address, int] = field(default_factory=dict)
    locked_ids: dict[Address, list[int]] = field(default_factory=dict)
    unlocked_ids: dict[Address, list[int]] = field(default_factory=dict)
    lock_order: dict[Address, list[int]] = field(default_factory=dict)
    unlock_order: dict[Address, list[int]] = field(default_factory=dict)
    origin_owner: dict[int, Address] = field(default_factory=dict)
    # sharing
    rnfsts: dict[int, RNFSTRecord] = field(default_factory=dict)
    rnfst_counter: int = 0

    # -- read helpers shared across modules --

    def balance_of(self, pu: Address, holder: Address) -> int:
        return self.balances.get(pu, {}).get(holder, 0)

    def snfst_count(self, address: Address) -> int:
        return len(self.locked_ids.get(address, ())) + len(
            self.unlocked_ids.get(address, ())
        )

    def is_pu(self, address: Address) -> bool:
        return bool(self.pu_flags.get(address, False))

    # -- canonical form --

    def canonical(self) -> dict:
        """JSON-able snapshot with zero balances and empty lists pruned."""
        balances = {}
        for pu, holders in sorted(self.balances.items()):
            kept = {h: format_amount(v) for h, v in sorted(holders.items()) if v}
            if kept:
                balances[pu] = kept
        return {
            "registry": {
                "token_counter": self.token_counter,
                "minted": self.minted,
                "uploaded": sorted(f"{ch}|{loc}" for ch, loc in self.uploaded),
                "owned": {a: ids for a, ids in sorted(self.owned.items()) if ids},
                "pu_flags": sorted(a for a, on in self.pu_flags.items() if on),
                "nfsts": {
                    str(tid): {
                        "owner": rec.owner,
                        "channel": rec.channel,
                        "location": rec.location,
                        "staked": rec.staked,
                        "holder": rec.holder,
                        "reclaimed": rec.reclaimed,
                    }
                    for tid, rec in sorted(self.nfsts.items())
                },
            },
            "securitization": {
                "snfsts": {
                    str(tid): {
                        "primary_user": rec.primary_user,
                        "channel": rec.channel,
                        "location": rec.location,
                        "locked": rec.locked,
                    }
                    for tid, rec in sorted(self.snfsts.items())
                },
                "balances": balances,
                "total_supply": {
                    pu: format_amount(v)
                    for pu, v in sorted(self.total_supply.items())
                    if v
                },
                "locked": {a: ids for a, ids in sorted(self.locked_ids.items()) if ids},
                "unlocked": {
                    a: ids for a, ids in sorted(self.unlocked_ids.items()) if ids
                },
                "lock_order": {
                    a: ids for a, ids in sorted(self.lock_order.items()) if ids
                },
                "unlock_order": {
                    a: ids for a, ids in sorted(self.unlock_order.items()) if ids
                },
                "origin_owner": {
                    str(tid): a for tid, a in sorted(self.origin_owner.items())
                },
            },
            "sharing": {
                "rnfst_counter": self.rnfst_counter,
                "rnfsts": {
                    str(tid): {
                        "owner": rec.owner,
                        "user": rec.user,
                        "expires": rec.expires,
                    }
                    for tid, rec in sorted(self.rnfsts.items())
                },
            },
        }

    def digest(self) -> str:
        blob = json.dumps(self.canonical(), sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(blob.encode("utf-8")).hexdigest()
