"""Differential runner: lock/unlock engine vs mint/burn baseline.

Both state machines consume the same command stream. Stakes become
one-unit hybrid mints; share transfers become plain balance transfers
(the baseline has one global pool, which is why comparison is limited to
scenarios with a single PU namespace). After every step the baseline's
per-address NFT count must equal the whole-unit share count on the lock
side; at the end the lock side's token id set must be exactly what it was
after setup, while the baseline's generally is not.
"""

from dataclasses import dataclass, field

from sftlock.addresses import derive_address
from sftlock.amounts import share_of
from sftlock.costs import CostLedger, CostReport, resolve_weights
from sftlock.engine import LedgerEngine
from sftlock.erc404 import HybridLedger
from sftlock.errors import (
    AssertionFailure,
    InternalConsistencyError,
    LedgerError,
    UnsupportedComparisonError,
)
from sftlock.scenario import Scenario, Step, StepFailure, _execute


@dataclass
class CompareResult:
    scenario_name: str
    ok: bool
    failure: StepFailure | None
    steps_executed: int
    counts_equal_every_step: bool
    count_mismatches: list[dict]
    sft_initial_ids: list[int]
    sft_final_ids: list[int]
    baseline_initial_ids: list[int]
    baseline_final_ids: list[int]
    cost_report: CostReport
    per_address_counts: list[dict] = field(default_factory=list)

    @property
    def sft_ids_unchanged(self) -> bool:
        return self.sft_initial_ids == self.sft_final_ids

    @property
    def baseline_ids_changed(self) -> bool:
        return self.baseline_initial_ids != self.baseline_final_ids

    def to_dict(self) -> dict:
        return {
            "scenario": self.scenario_name,
            "ok": self.ok,
            "failure": self.failure.to_dict() if self.failure else None,
            "steps_executed": self.steps_executed,
            "counts_equal_every_step": self.counts_equal_every_step,
            "count_mismatches": self.count_mismatches,
            "identity": {
                "sft_initial_ids": self.sft_initial_ids,
                "sft_final_ids": self.sft_final_ids,
                "sft_ids_unchanged": self.sft_ids_unchanged,
                "baseline_initial_ids": self.baseline_initial_ids,
                "baseline_final_ids": self.baseline_final_ids,
                "baseline_ids_changed": self.baseline_ids_changed,
            },
            "cost": self.cost_report.to_dict(),
        }

    def render_text(self) -> str:
        lines = [f"comparison: {self.scenario_name}"]
        lines.append(
            "per-step NFT-count equality: "
            + ("equal at every step" if self.counts_equal_every_step else "MISMATCH")
        )
        for mismatch in self.count_mismatches:
            lines.append(f"  step {mismatch['step']}: {mismatch['detail']}")
        lines.append(
            f"lock-engine token ids: {self.sft_initial_ids} -> {self.sft_final_ids}"
            + (" (identity preserved)" if self.sft_ids_unchanged else " (CHANGED)")
        )
        lines.append(
            f"baseline token ids:    {self.baseline_initial_ids} -> "
            f"{self.baseline_final_ids}"
            + (" (identity lost)" if self.baseline_ids_changed else " (unchanged)")
        )
        if self.failure:
            lines.append(
                f"FAILED at step {self.failure.index} ({self.failure.op}): "
                f"[{self.failure.kind}] {self.failure.message}"
            )
        lines.append(self.cost_report.render_text())
        return "\n".join(lines)


def single_pu_of(scenario: Scenario) -> str | None:
    """The one PU namespace the scenario uses, or None when it uses none."""
    pus = set()
    for step in scenario.steps:
        if step.op == "stake_nfst":
            pus.add(scenario.actors[step.params["caller"]])
        elif step.op == "transfer":
            pus.add(scenario.actors[step.params["pu"]])
        elif step.op in ("set_lock_order", "set_unlock_order"):
            pus.add(scenario.actors[step.params["caller"]])
    if len(pus) > 1:
        raise UnsupportedComparisonError(
            f"comparison needs a single PU namespace, scenario uses {len(pus)}"
        )
    return pus.pop() if pus else None


def run_compare(
    scenario: Scenario, weights_override: dict | None = None
) -> CompareResult:
    weights = resolve_weights(scenario.cost_weights, weights_override)
    pu = single_pu_of(scenario)
    engine = LedgerEngine(
        sma=scenario.actors.get("SMA", derive_address("SMA")), costs=CostLedger()
    )
    baseline = HybridLedger(costs=CostLedger())

    failure = None
    executed = 0
    mismatches: list[dict] = []
    per_address_counts: list[dict] = []
    last_setup_snapshot: tuple[list[int], list[int]] | None = None

    for step in scenario.steps:
        try:
            _execute(engine, scenario.actors, step)
            _execute_baseline(baseline, scenario, step)
        except (LedgerError, AssertionFailure, InternalConsistencyError) as exc:
            kind = getattr(exc, "kind", "internal-consistency")
            failure = StepFailure(
                index=step.index, op=step.op, kind=kind, message=str(exc)
            )
            break
        executed += 1
        counts = _count_check(engine, baseline, scenario, pu, step.index)
        per_address_counts.append(counts)
        if not counts["equal"]:
            mismatches.append({"step": step.index, "detail": counts["detail"]})
        if step.op == "stake_nfst":
            last_setup_snapshot = (
                sorted(engine.snfst_ids_of(pu)) if pu else [],
                sorted(baseline.all_held_ids()),
            )

    sft_initial, baseline_initial = last_setup_snapshot or ([], [])
    return CompareResult(
        scenario_name=scenario.name,
        ok=failure is None and not mismatches,
        failure=failure,
        steps_executed=executed,
        counts_equal_every_step=not mismatches,
        count_mismatches=mismatches,
        sft_initial_ids=sft_initial,
        sft_final_ids=sorted(engine.snfst_ids_of(pu)) if pu else [],
        baseline_initial_ids=baseline_initial,
        baseline_final_ids=sorted(baseline.all_held_ids()),
        cost_report=_merged_costs(engine, baseline, weights),
        per_address_counts=per_address_counts,
    )


def _execute_baseline(baseline: HybridLedger, scenario: Scenario, step: Step) -> None:
    p = step.params
    if step.op == "stake_nfst":
        baseline.mint(scenario.actors[p["caller"]], 1)
    elif step.op == "transfer":
        baseline.transfer(
            scenario.actors[p["from"]], scenario.actors[p["to"]], p["amount"]
        )
    elif step.op == "assert_balance":
        got = baseline.balance(scenario.actors[p["holder"]])
        if got != p["amount"]:
            raise AssertionFailure(
                f"baseline balance of {p['holder']} is {got}, "
                f"expected {p['amount']}"
            )
    elif step.op == "assert_share":
        got = baseline.share(scenario.actors[p["holder"]])
        if got != p["share"]:
            raise AssertionFailure(
                f"baseline share of {p['holder']} is {got}, expected {p['share']}"
            )
    # registry, order-list, and rental steps have no baseline counterpart


def _count_check(engine, baseline, scenario: Scenario, pu, step_index: int) -> dict:
    if pu is None:
        return {"step": step_index, "equal": True, "detail": "", "counts": {}}
    counts = {}
    for role, address in scenario.actors.items():
        expected = share_of(engine.balance_of(pu, address))
        got = baseline.nft_count(address)
        counts[role] = {"baseline_nfts": got, "lock_engine_shares": expected}
        if got != expected:
            return {
                "step": step_index,
                "equal": False,
                "detail": (
                    f"{role}: baseline holds {got} NFTs, lock engine implies "
                    f"{expected} whole shares"
                ),
                "counts": counts,
            }
    unlocked = len(engine.unlocked_of(pu))
    pu_nfts = baseline.nft_count(pu)
    if unlocked != pu_nfts:
        return {
            "step": step_index,
            "equal": False,
            "detail": (
                f"PU unlocked count {unlocked} != baseline NFT count {pu_nfts}"
            ),
            "counts": counts,
        }
    return {"step": step_index, "equal": True, "detail": "", "counts": counts}


def _merged_costs(engine, baseline, weights) -> CostReport:
    merged = CostLedger()
    merged.merge(engine.costs)
    merged.merge(baseline.costs)
    return merged.snapshot(weights)
