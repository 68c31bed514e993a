"""Storage-primitive cost accounting.

Each mutating operation records how many storage primitives it touched;
weighted totals give a desk-scale proxy for on-chain execution cost. The
default weights are a model, not a gas oracle: allocation
(slot_write_new) and deallocation (slot_delete) are priced far above
in-place updates, because reclaiming per-token storage is exactly the
overhead the lock/unlock design avoids. Only the relative ordering of
totals is meaningful; weights are fully configurable.
"""

from dataclasses import dataclass, field

from sftlock.errors import IncompleteDataError

PRIMITIVES = (
    "slot_write_new",
    "slot_update",
    "slot_delete",
    "slot_read",
    "list_insert",
    "list_remove",
    "event_emit",
)

DEFAULT_WEIGHTS = {
    "slot_write_new": 20000,
    "slot_delete": 10000,
    "slot_update": 5000,
    "slot_read": 2000,
    "list_insert": 1500,
    "list_remove": 1500,
    "event_emit": 375,
}

# The four kinds the comparison report is defined over: per-token mint and
# burn in the hybrid baseline versus lock and unlock transitions here.
COMPARED_KINDS = ("mint", "burn", "unlock", "lock")


def resolve_weights(*overrides: dict | None) -> dict[str, int]:
    """Merge weight overrides (later wins) over the defaults."""
    weights = dict(DEFAULT_WEIGHTS)
    for override in overrides:
        if not override:
            continue
        for primitive, value in override.items():
            if primitive not in DEFAULT_WEIGHTS:
                raise IncompleteDataError(f"unknown cost primitive: {primitive!r}")
            value = int(value)
            if value < 0:
                raise IncompleteDataError(
                    f"negative weight for {primitive!r}: {value}"
                )
            weights[primitive] = value
    return weights


class CostLedger:
    """Primitive counters per operation kind."""

    def __init__(self):
        self.counts: dict[str, dict[str, int]] = {}
        self.instances: dict[str, int] = {}

    def record(self, op_kind: str, primitive: str, n: int = 1) -> None:
        if primitive not in DEFAULT_WEIGHTS:
            raise ValueError(f"unknown primitive: {primitive!r}")
        if n < 1:
            raise ValueError(f"count must be >= 1, got {n}")
        bucket = self.counts.setdefault(op_kind, {})
        bucket[primitive] = bucket.get(primitive, 0) + n

    def begin(self, op_kind: str) -> None:
        """Mark one instance of op_kind (counts may still be zero)."""
        self.instances[op_kind] = self.instances.get(op_kind, 0) + 1

    def merge(self, other: "CostLedger") -> None:
        for kind, bucket in other.counts.items():
            for primitive, n in bucket.items():
                self.record(kind, primitive, n)
        for kind, n in other.instances.items():
            self.instances[kind] = self.instances.get(kind, 0) + n

    def kinds(self) -> list[str]:
        return sorted(set(self.counts) | set(self.instances))

    def total(self, op_kind: str, weights: dict[str, int] | None = None) -> int:
        weights = weights or DEFAULT_WEIGHTS
        bucket = self.counts.get(op_kind, {})
        return sum(n * weights[p] for p, n in bucket.items())

    def totals(self, weights: dict[str, int] | None = None) -> dict[str, int]:
        return {kind: self.total(kind, weights) for kind in self.kinds()}

    def report(self, weights: dict[str, int] | None = None) -> "CostReport":
        """Comparison table over mint/burn/unlock/lock; all four required."""
        missing = [k for k in COMPARED_KINDS if k not in self.counts]
        if missing:
            raise IncompleteDataError(
                "no recorded instances of: " + ", ".join(missing)
            )
        return self.snapshot(weights)

    def snapshot(self, weights: dict[str, int] | None = None) -> "CostReport":
        """Like report(), but tolerates missing kinds (totals read as 0)."""
        weights = weights or DEFAULT_WEIGHTS
        totals = {kind: self.total(kind, weights) for kind in COMPARED_KINDS}
        return CostReport(
            totals=totals,
            instances={
                kind: self.instances.get(kind, 0) for kind in COMPARED_KINDS
            },
            reduction_unlock_vs_mint=_reduction(totals["mint"], totals["unlock"]),
            reduction_lock_vs_burn=_reduction(totals["burn"], totals["lock"]),
            missing=[k for k in COMPARED_KINDS if k not in self.counts],
            weights=dict(weights),
            counts={k: dict(v) for k, v in self.counts.items()},
        )


def _reduction(base: int, new: int) -> float | None:
    if base == 0:
        return None
    return (base - new) / base * 100.0


@dataclass
class CostReport:
    totals: dict[str, int]
    instances: dict[str, int]
    reduction_unlock_vs_mint: float | None
    reduction_lock_vs_burn: float | None
    missing: list[str]
    weights: dict[str, int]
    counts: dict[str, dict[str, int]] = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "totals": dict(self.totals),
            "instances": dict(self.instances),
            "reductions": {
                "unlock_vs_mint_pct": self.reduction_unlock_vs_mint,
                "lock_vs_burn_pct": self.reduction_lock_vs_burn,
            },
            "missing": list(self.missing),
            "weights": dict(self.weights),
            "counts": {k: dict(v) for k, v in self.counts.items()},
        }

    def render_text(self) -> str:
        lines = ["operation cost comparison (weighted primitive counts)"]
        lines.append(f"  {'kind':<8} {'instances':>9} {'total':>12}")
        for kind in COMPARED_KINDS:
            lines.append(
                f"  {kind:<8} {self.instances.get(kind, 0):>9}"
                f" {self.totals.get(kind, 0):>12}"
            )
        lines.append(
            "  unlock vs mint: " + _render_pct(self.reduction_unlock_vs_mint)
        )
        lines.append("  lock vs burn:   " + _render_pct(self.reduction_lock_vs_burn))
        if self.missing:
            lines.append("  incomplete: no recorded " + ", ".join(self.missing))
        return "\n".join(lines)


def _render_pct(value: float | None) -> str:
    if value is None:
        return "n/a (zero base)"
    return f"{value:.1f}% reduction"
