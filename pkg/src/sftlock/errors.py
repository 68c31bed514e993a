"""Exception taxonomy for the ledger.

Every rejection an engine operation can produce maps to one subclass so
callers (scenario runner, service, CLI) can report the kind by name.
"""


class LedgerError(Exception):
    """Base class for all domain-rule rejections."""

    kind = "ledger-error"


class AuthorizationError(LedgerError):
    """Caller lacks the role required for the operation."""

    kind = "authorization"


class DuplicateSpectrumError(LedgerError):
    """A live token already carries this (channel, location) key."""

    kind = "duplicate-spectrum"


class InvalidRecipientError(LedgerError):
    """The zero address cannot receive tokens or shares."""

    kind = "invalid-recipient"


class InvalidSenderError(LedgerError):
    """The zero address cannot send shares."""

    kind = "invalid-sender"


class NotFoundError(LedgerError):
    """Token id does not exist or has been reclaimed."""

    kind = "not-found"


class StakedAssetError(LedgerError):
    """Operation is not allowed while the token is escrowed."""

    kind = "staked-asset"


class OwnershipError(LedgerError):
    """Caller does not own the token the operation targets."""

    kind = "ownership"


class AlreadyStakedError(LedgerError):
    """The token is already escrowed."""

    kind = "already-staked"


class StateError(LedgerError):
    """The token is not in the lock state the operation requires."""

    kind = "state"


class InvalidListError(LedgerError):
    """A submitted order list is malformed (e.g. duplicate ids)."""

    kind = "invalid-list"


class BalanceError(LedgerError):
    """Sender balance is below the requested amount."""

    kind = "balance"


class InvalidExpiryError(LedgerError):
    """Rental expiry is not in the future of the supplied logical time."""

    kind = "invalid-expiry"


class AmountError(LedgerError):
    """An amount literal could not be parsed exactly."""

    kind = "amount"


class IncompleteDataError(LedgerError):
    """Cost report requested before every compared kind was recorded."""

    kind = "incomplete-data"


class UnsupportedComparisonError(LedgerError):
    """Differential comparison is limited to single-PU scenarios."""

    kind = "unsupported-comparison"


class InternalConsistencyError(Exception):
    """An invariant the engine itself maintains was violated; a bug."""

    kind = "internal-consistency"


class ReplayError(Exception):
    """A journal entry could not be re-applied."""

    kind = "replay"

    def __init__(self, message: str, sequence: int | None = None):
        super().__init__(message)
        self.sequence = sequence


class ScenarioError(Exception):
    """A scenario file is malformed or references undeclared actors."""

    kind = "scenario"

    def __init__(self, message: str, step_index: int | None = None):
        super().__init__(message)
        self.step_index = step_index


class AssertionFailure(Exception):
    """An assert_* scenario step did not hold."""

    kind = "assertion"
