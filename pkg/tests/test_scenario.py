import pytest

from sftlock.addresses import derive_address
from sftlock.amounts import UNIT
from sftlock.errors import ScenarioError
from sftlock.scenario import (
    Scenario,
    journal_path_for,
    load_scenario,
    parse_scenario,
    run_scenario,
)

from conftest import scenario_path

HEADER = '{"scenario": "t", "actors": {"SMA": "auto", "PU": "auto", "SU": "auto"}}'


def scenario_text(*steps: str) -> str:
    return "\n".join([HEADER, *steps]) + "\n"


def test_header_parses_roles_and_auto_addresses():
    scenario = parse_scenario(HEADER)
    assert scenario.name == "t"
    assert scenario.actors["PU"] == derive_address("PU")


def test_explicit_hex_actor_addresses():
    text = '{"scenario": "t", "actors": {"PU": "0x' + "ab" * 20 + '"}}'
    scenario = parse_scenario(text)
    assert scenario.actors["PU"] == "0x" + "ab" * 20


def test_empty_file_rejected():
    with pytest.raises(ScenarioError):
        parse_scenario("")


def test_non_json_line_rejected():
    with pytest.raises(ScenarioError):
        parse_scenario(HEADER + "\nmint everything\n")


def test_unknown_op_rejected():
    with pytest.raises(ScenarioError):
        parse_scenario(scenario_text('{"op": "steal_nfst", "caller": "PU"}'))


def test_missing_field_rejected():
    with pytest.raises(ScenarioError) as excinfo:
        parse_scenario(scenario_text('{"op": "stake_nfst", "caller": "PU"}'))
    assert "token_id" in str(excinfo.value)


def test_undeclared_actor_rejected():
    step = '{"op": "mint_nfst", "caller": "SMA", "to": "MALLORY", "channel": "c", "location": "l"}'
    with pytest.raises(ScenarioError) as excinfo:
        parse_scenario(scenario_text(step))
    assert "MALLORY" in str(excinfo.value)


def test_unquoted_decimal_amount_stays_exact():
    step = '{"op": "transfer", "from": "PU", "to": "SU", "pu": "PU", "amount": 0.3}'
    scenario = parse_scenario(scenario_text(step))
    assert scenario.steps[0].params["amount"] == 3 * 10**17


def test_amount_share_notation_and_atto_strings():
    steps = (
        '{"op": "transfer", "from": "PU", "to": "SU", "pu": "PU", "amount": "1.5"}',
        '{"op": "transfer", "from": "PU", "to": "SU", "pu": "PU", "amount": "42"}',
    )
    scenario = parse_scenario(scenario_text(*steps))
    assert scenario.steps[0].params["amount"] == 15 * 10**17
    assert scenario.steps[1].params["amount"] == 42  # plain digits are atto-shares


def test_overlong_fraction_rejected():
    step = (
        '{"op": "transfer", "from": "PU", "to": "SU", "pu": "PU",'
        ' "amount": "0.0000000000000000001"}'
    )
    with pytest.raises(ScenarioError):
        parse_scenario(scenario_text(step))


def test_run_executes_and_reports_ok():
    text = scenario_text(
        '{"op": "mint_nfst", "caller": "SMA", "to": "PU", "channel": "c", "location": "l"}',
        '{"op": "stake_nfst", "caller": "PU", "token_id": 1}',
        '{"op": "assert_share", "pu": "PU", "holder": "PU", "share": 1}',
    )
    result = run_scenario(parse_scenario(text))
    assert result.ok
    assert result.steps_executed == 3
    assert result.engine.balance_of(
        derive_address("PU"), derive_address("PU")
    ) == UNIT


def test_failed_assertion_reports_step_index():
    text = scenario_text(
        '{"op": "mint_nfst", "caller": "SMA", "to": "PU", "channel": "c", "location": "l"}',
        '{"op": "assert_share", "pu": "PU", "holder": "PU", "share": 5}',
    )
    result = run_scenario(parse_scenario(text))
    assert not result.ok
    assert result.failure.index == 1
    assert result.failure.kind == "assertion"
    assert "FAILED at step 1" in result.summary_text()


def test_engine_error_reports_kind():
    text = scenario_text(
        '{"op": "stake_nfst", "caller": "PU", "token_id": 1}',
    )
    result = run_scenario(parse_scenario(text))
    assert not result.ok
    assert result.failure.kind == "not-found"
    assert result.steps_executed == 0


def test_execution_stops_at_first_failure():
    text = scenario_text(
        '{"op": "stake_nfst", "caller": "PU", "token_id": 1}',
        '{"op": "mint_nfst", "caller": "SMA", "to": "PU", "channel": "c", "location": "l"}',
    )
    result = run_scenario(parse_scenario(text))
    assert len(result.engine.journal) == 0


def test_scenario_weights_flow_into_report():
    header = (
        '{"scenario": "w", "actors": {"SMA": "auto", "PU": "auto"},'
        ' "cost_weights": {"slot_write_new": 7, "slot_update": 0, "list_insert": 0,'
        ' "event_emit": 0}}'
    )
    text = "\n".join(
        [
            header,
            '{"op": "mint_nfst", "caller": "SMA", "to": "PU", "channel": "c", "location": "l"}',
        ]
    )
    result = run_scenario(parse_scenario(text))
    assert result.engine.costs.total("mint_nfst", result.cost_report.weights) == 7


def test_runs_are_deterministic():
    scenario = load_scenario(scenario_path("roundtrip_lock_unlock"))
    first = run_scenario(scenario)
    second = run_scenario(scenario)
    assert first.ok and second.ok
    assert first.journal_lines() == second.journal_lines()
    assert first.engine.digest() == second.engine.digest()


@pytest.mark.parametrize(
    "name",
    [
        "mint_single",
        "reclaim_third",
        "stake_single",
        "lock_order_priority",
        "roundtrip_lock_unlock",
        "su_to_su_noop",
        "erc404_divergence",
        "rental_interleaved",
    ],
)
def test_bundled_scenarios_pass(name):
    result = run_scenario(load_scenario(scenario_path(name)))
    assert result.ok, result.summary_text()


def test_journal_path_sits_beside_scenario(tmp_path):
    assert journal_path_for(tmp_path / "x.scenario") == tmp_path / "x.journal"
