"""Declarative scenario files and the runner that drives the engine.

A scenario is line-oriented JSON, same serialization family as the
journal: the first non-empty line is a header object with the scenario
name, the actor table (role -> 0x-hex address, or "auto" to derive one
from the role name), and optional cost weights; every further line is one
step. Steps reference actors by role name only.

Unquoted decimal literals are intercepted before float conversion so
amounts like 0.3 stay digit-exact.
"""

import json
from dataclasses import dataclass, field
from pathlib import Path

from sftlock.addresses import Address, derive_address, parse_address
from sftlock.amounts import format_shares, parse_amount
from sftlock.costs import CostLedger, CostReport, resolve_weights
from sftlock.engine import LedgerEngine
from sftlock.errors import (
    AssertionFailure,
    InternalConsistencyError,
    LedgerError,
    ScenarioError,
)

MUTATING_OPS = (
    "mint_nfst",
    "reclaim_nfst",
    "stake_nfst",
    "set_lock_order",
    "set_unlock_order",
    "transfer",
    "mint_rnfst",
    "set_user",
)
ASSERT_OPS = ("assert_balance", "assert_locked", "assert_unlocked", "assert_share")
KNOWN_OPS = MUTATING_OPS + ASSERT_OPS

_REQUIRED_FIELDS = {
    "mint_nfst": ("caller", "to", "channel", "location"),
    "reclaim_nfst": ("caller", "token_id"),
    "stake_nfst": ("caller", "token_id"),
    "set_lock_order": ("caller", "token_ids"),
    "set_unlock_order": ("caller", "token_ids"),
    "transfer": ("from", "to", "pu", "amount"),
    "mint_rnfst": ("caller",),
    "set_user": ("caller", "token_id", "user", "expires", "now"),
    "assert_balance": ("pu", "holder", "amount"),
    "assert_share": ("pu", "holder", "share"),
    "assert_locked": ("pu", "token_ids"),
    "assert_unlocked": ("pu", "token_ids"),
}
_ACTOR_FIELDS = ("caller", "to", "from", "pu", "holder", "user")


@dataclass
class Step:
    index: int
    op: str
    params: dict


@dataclass
class Scenario:
    name: str
    actors: dict[str, Address]
    steps: list[Step]
    cost_weights: dict[str, int] = field(default_factory=dict)
    source_path: Path | None = None


def load_scenario(path: str | Path) -> Scenario:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ScenarioError(f"cannot read scenario file {path}: {exc}") from exc
    scenario = parse_scenario(text)
    scenario.source_path = path
    return scenario


def parse_scenario(text: str) -> Scenario:
    header = None
    steps: list[Step] = []
    for line_no, line in enumerate(text.splitlines(), start=1):
        if not line.strip():
            continue
        try:
            obj = json.loads(line, parse_float=str)
        except json.JSONDecodeError as exc:
            raise ScenarioError(f"line {line_no}: not valid JSON: {exc}") from exc
        if not isinstance(obj, dict):
            raise ScenarioError(f"line {line_no}: expected an object")
        if header is None:
            header = _parse_header(obj, line_no)
            continue
        steps.append(_parse_step(obj, len(steps), line_no, header["actors"]))
    if header is None:
        raise ScenarioError("scenario file is empty")
    return Scenario(
        name=header["name"],
        actors=header["actors"],
        steps=steps,
        cost_weights=header["cost_weights"],
    )


def _parse_header(obj: dict, line_no: int) -> dict:
    name = obj.get("scenario")
    if not isinstance(name, str) or not name:
        raise ScenarioError(f"line {line_no}: header needs a 'scenario' name")
    raw_actors = obj.get("actors", {})
    if not isinstance(raw_actors, dict):
        raise ScenarioError(f"line {line_no}: 'actors' must map roles to addresses")
    actors: dict[str, Address] = {}
    for role, value in raw_actors.items():
        if value == "auto":
            actors[role] = derive_address(role)
        else:
            try:
                actors[role] = parse_address(value)
            except ValueError as exc:
                raise ScenarioError(f"line {line_no}: actor {role!r}: {exc}") from exc
    weights = obj.get("cost_weights", {})
    if not isinstance(weights, dict):
        raise ScenarioError(f"line {line_no}: 'cost_weights' must be an object")
    return {"name": name, "actors": actors, "cost_weights": weights}


def _parse_step(obj: dict, index: int, line_no: int, actors: dict) -> Step:
    op = obj.get("op")
    if op not in KNOWN_OPS:
        raise ScenarioError(f"step {index}: unknown op {op!r}", step_index=index)
    params = {}
    for fld in _REQUIRED_FIELDS[op]:
        if fld not in obj:
            raise ScenarioError(
                f"step {index}: op {op!r} missing field {fld!r}", step_index=index
            )
        params[fld] = obj[fld]
    for fld in _ACTOR_FIELDS:
        if fld in params and params[fld] not in actors:
            raise ScenarioError(
                f"step {index}: {fld}={params[fld]!r} is not a declared actor",
                step_index=index,
            )
    for fld in ("token_id", "expires", "now", "share"):
        if fld in params:
            params[fld] = _parse_int(params[fld], index, fld)
    if "token_ids" in params:
        raw = params["token_ids"]
        if not isinstance(raw, list):
            raise ScenarioError(
                f"step {index}: token_ids must be a list", step_index=index
            )
        params["token_ids"] = [_parse_int(v, index, "token_ids") for v in raw]
    if "amount" in params:
        try:
            params["amount"] = parse_amount(params["amount"])
        except LedgerError as exc:
            raise ScenarioError(f"step {index}: {exc}", step_index=index) from exc
    return Step(index=index, op=op, params=params)


def _parse_int(value: object, index: int, fld: str) -> int:
    if isinstance(value, bool) or not isinstance(value, (int, str)):
        raise ScenarioError(f"step {index}: {fld} must be an integer", step_index=index)
    try:
        parsed = int(value)
    except ValueError as exc:
        raise ScenarioError(
            f"step {index}: {fld} must be an integer: {value!r}", step_index=index
        ) from exc
    if parsed < 0:
        raise ScenarioError(f"step {index}: {fld} must be >= 0", step_index=index)
    return parsed


@dataclass
class StepFailure:
    index: int
    op: str
    kind: str
    message: str

    def to_dict(self) -> dict:
        return {
            "index": self.index,
            "op": self.op,
            "kind": self.kind,
            "message": self.message,
        }


@dataclass
class RunResult:
    scenario: Scenario
    engine: LedgerEngine
    ok: bool
    steps_executed: int
    failure: StepFailure | None
    cost_report: CostReport

    def journal_lines(self) -> list[str]:
        return self.engine.journal.lines()

    def summary_text(self) -> str:
        lines = [
            f"scenario: {self.scenario.name}",
            f"steps:    {self.steps_executed}/{len(self.scenario.steps)} executed",
            f"events:   {len(self.engine.journal)} emitted",
            f"digest:   {self.engine.digest()}",
        ]
        state = self.engine.state
        for pu in sorted(state.total_supply):
            locked = state.locked_ids.get(pu, [])
            unlocked = state.unlocked_ids.get(pu, [])
            lines.append(
                f"namespace {_role_of(self.scenario, pu)}: "
                f"supply {format_shares(state.total_supply[pu])}, "
                f"locked {locked}, unlocked {unlocked}"
            )
            for holder, atto in sorted(state.balances.get(pu, {}).items()):
                if atto:
                    lines.append(
                        f"  {_role_of(self.scenario, holder)}: "
                        f"{format_shares(atto)} shares"
                    )
        if self.failure:
            lines.append(
                f"FAILED at step {self.failure.index} ({self.failure.op}): "
                f"[{self.failure.kind}] {self.failure.message}"
            )
        return "\n".join(lines)

    def to_dict(self) -> dict:
        return {
            "scenario": self.scenario.name,
            "ok": self.ok,
            "steps_total": len(self.scenario.steps),
            "steps_executed": self.steps_executed,
            "events": len(self.engine.journal),
            "digest": self.engine.digest(),
            "failure": self.failure.to_dict() if self.failure else None,
            "cost": self.cost_report.to_dict(),
            "journal": self.journal_lines(),
        }


def _role_of(scenario: Scenario, address: Address) -> str:
    for role, addr in scenario.actors.items():
        if addr == address:
            return role
    return address


def run_scenario(
    scenario: Scenario, weights_override: dict | None = None
) -> RunResult:
    weights = resolve_weights(scenario.cost_weights, weights_override)
    engine = LedgerEngine(
        sma=scenario.actors.get("SMA", derive_address("SMA")), costs=CostLedger()
    )
    executed = 0
    failure = None
    for step in scenario.steps:
        try:
            _execute(engine, scenario.actors, step)
        except (LedgerError, AssertionFailure, InternalConsistencyError) as exc:
            kind = getattr(exc, "kind", "internal-consistency")
            failure = StepFailure(
                index=step.index, op=step.op, kind=kind, message=str(exc)
            )
            break
        executed += 1
    return RunResult(
        scenario=scenario,
        engine=engine,
        ok=failure is None,
        steps_executed=executed,
        failure=failure,
        cost_report=engine.costs.snapshot(weights),
    )


def _execute(engine: LedgerEngine, actors: dict, step: Step) -> None:
    p = step.params
    op = step.op
    if op == "mint_nfst":
        engine.mint_nfst(actors[p["caller"]], actors[p["to"]], p["channel"], p["location"])
    elif op == "reclaim_nfst":
        engine.reclaim_nfst(actors[p["caller"]], p["token_id"])
    elif op == "stake_nfst":
        engine.stake_nfst(actors[p["caller"]], p["token_id"])
    elif op == "set_lock_order":
        engine.set_lock_order(actors[p["caller"]], p["token_ids"])
    elif op == "set_unlock_order":
        engine.set_unlock_order(actors[p["caller"]], p["token_ids"])
    elif op == "transfer":
        engine.transfer(actors[p["from"]], actors[p["to"]], actors[p["pu"]], p["amount"])
    elif op == "mint_rnfst":
        engine.mint_rnfst(actors[p["caller"]])
    elif op == "set_user":
        engine.set_user(
            actors[p["caller"]], p["token_id"], actors[p["user"]], p["expires"], p["now"]
        )
    elif op == "assert_balance":
        got = engine.balance_of(actors[p["pu"]], actors[p["holder"]])
        if got != p["amount"]:
            raise AssertionFailure(
                f"balance of {p['holder']} in {p['pu']} namespace is "
                f"{got} atto-shares, expected {p['amount']}"
            )
    elif op == "assert_share":
        got = engine.share_of_holder(actors[p["pu"]], actors[p["holder"]])
        if got != p["share"]:
            raise AssertionFailure(
                f"share of {p['holder']} in {p['pu']} namespace is "
                f"{got}, expected {p['share']}"
            )
    elif op == "assert_locked":
        got = engine.locked_of(actors[p["pu"]])
        if got != p["token_ids"]:
            raise AssertionFailure(
                f"locked list of {p['pu']} is {got}, expected {p['token_ids']}"
            )
    elif op == "assert_unlocked":
        got = engine.unlocked_of(actors[p["pu"]])
        if got != p["token_ids"]:
            raise AssertionFailure(
                f"unlocked list of {p['pu']} is {got}, expected {p['token_ids']}"
            )
    else:  # pragma: no cover - guarded by KNOWN_OPS at parse time
        raise ScenarioError(f"unhandled op {op!r}", step_index=step.index)


def journal_path_for(scenario_path: str | Path) -> Path:
    """Default journal location: beside the scenario, .journal extension."""
    path = Path(scenario_path)
    return path.with_suffix(".journal")
