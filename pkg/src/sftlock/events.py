"""Audit events and their journal-line serialization.

Every state mutation in the system emits at least one event. Args follow
the underscore naming convention of on-chain event dumps (_from, _to,
_tokenId, _primaryUser, _amount); token ids and amounts are rendered as
decimal strings so 10^18-scale values survive any JSON reader.
"""

import json
from dataclasses import dataclass, field

from sftlock.errors import ReplayError

MINT_NFST = "MINT_NFST"
RECLAIM_NFST = "RECLAIM_NFST"
TRANSFER_SNFST = "TRANSFER_SNFST"
TRANSFER_SFST = "TRANSFER_SFST"
LOCK_SNFST = "LOCK_SNFST"
UNLOCK_SNFST = "UNLOCK_SNFST"
SET_LOCK_ORDER = "SET_LOCK_ORDER"
SET_UNLOCK_ORDER = "SET_UNLOCK_ORDER"
MINT_RNFST = "MINT_RNFST"
UPDATE_USER = "UPDATE_USER"

EVENT_KINDS = frozenset(
    {
        MINT_NFST,
        RECLAIM_NFST,
        TRANSFER_SNFST,
        TRANSFER_SFST,
        LOCK_SNFST,
        UNLOCK_SNFST,
        SET_LOCK_ORDER,
        SET_UNLOCK_ORDER,
        MINT_RNFST,
        UPDATE_USER,
    }
)


@dataclass(frozen=True)
class Event:
    sequence: int
    emitter: str
    kind: str
    args: dict = field(default_factory=dict)

    def to_json_line(self) -> str:
        payload = {
            "sequence": self.sequence,
            "emitter": self.emitter,
            "kind": self.kind,
            "args": self.args,
        }
        return json.dumps(payload, separators=(", ", ": "), sort_keys=False)

    @classmethod
    def from_json_line(cls, line: str, expected_sequence: int | None = None) -> "Event":
        try:
            payload = json.loads(line)
        except json.JSONDecodeError as exc:
            raise ReplayError(
                f"malformed journal line at sequence {expected_sequence}: {exc}",
                sequence=expected_sequence,
            ) from exc
        try:
            event = cls(
                sequence=payload["sequence"],
                emitter=payload["emitter"],
                kind=payload["kind"],
                args=payload["args"],
            )
        except (KeyError, TypeError) as exc:
            raise ReplayError(
                f"journal line at sequence {expected_sequence} missing field: {exc}",
                sequence=expected_sequence,
            ) from exc
        if event.kind not in EVENT_KINDS:
            raise ReplayError(
                f"unknown event kind {event.kind!r} at sequence {event.sequence}",
                sequence=event.sequence,
            )
        if expected_sequence is not None and event.sequence != expected_sequence:
            raise ReplayError(
                f"journal sequence gap: expected {expected_sequence}, "
                f"found {event.sequence}",
                sequence=expected_sequence,
            )
        return event


def references_token(event: Event, token_id: int) -> bool:
    """True when the event's args name token_id (directly or in a list)."""
    wanted = str(token_id)
    if event.args.get("_tokenId") == wanted:
        return True
    id_list = event.args.get("_tokenIds")
    return isinstance(id_list, list) and wanted in id_list
