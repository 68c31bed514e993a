import pytest

from sftlock.addresses import ZERO_ADDRESS, derive_address
from sftlock.errors import InternalConsistencyError, ReplayError
from sftlock.events import Event, MINT_NFST, references_token
from sftlock.journal import Journal

EMITTER = derive_address("spectrum-authorization-contract")


def mint_event(sequence: int, token_id: int = 1) -> Event:
    return Event(
        sequence=sequence,
        emitter=EMITTER,
        kind=MINT_NFST,
        args={
            "_from": ZERO_ADDRESS,
            "_to": derive_address("PU"),
            "_tokenId": str(token_id),
            "_channel": "ch17",
            "_location": "zone-A",
        },
    )


def test_first_append_gets_sequence_zero():
    journal = Journal()
    assert journal.append(mint_event(0)) == 0


def test_append_at_current_length():
    journal = Journal([mint_event(i, i + 1) for i in range(5)])
    assert journal.append(mint_event(5, 6)) == 5


def test_append_gap_is_an_internal_error():
    journal = Journal([mint_event(i, i + 1) for i in range(5)])
    with pytest.raises(InternalConsistencyError):
        journal.append(mint_event(7, 8))


def test_file_round_trip(tmp_path):
    journal = Journal([mint_event(0), mint_event(1, 2)])
    path = tmp_path / "run.journal"
    journal.save(path)
    loaded = Journal.load(path)
    assert loaded.lines() == journal.lines()
    assert [e.kind for e in loaded] == [MINT_NFST, MINT_NFST]


def test_lines_are_one_json_object_each(tmp_path):
    import json

    journal = Journal([mint_event(0)])
    (line,) = journal.lines()
    obj = json.loads(line)
    assert set(obj) == {"sequence", "emitter", "kind", "args"}
    assert obj["args"]["_from"] == ZERO_ADDRESS
    assert isinstance(obj["args"]["_tokenId"], str)


def test_malformed_line_names_the_sequence():
    with pytest.raises(ReplayError) as excinfo:
        Journal.from_lines([mint_event(0).to_json_line(), "{not json"])
    assert excinfo.value.sequence == 1
    assert "1" in str(excinfo.value)


def test_sequence_gap_on_load_is_replay_error():
    lines = [mint_event(0).to_json_line(), mint_event(2, 2).to_json_line()]
    with pytest.raises(ReplayError):
        Journal.from_lines(lines)


def test_unknown_kind_rejected():
    bad = mint_event(0).to_json_line().replace(MINT_NFST, "SMASH_NFST")
    with pytest.raises(ReplayError):
        Journal.from_lines([bad])


def test_references_token_matches_ids_and_lists():
    event = mint_event(0, token_id=3)
    assert references_token(event, 3)
    assert not references_token(event, 1)
    order = Event(
        sequence=1,
        emitter=EMITTER,
        kind="SET_LOCK_ORDER",
        args={"_primaryUser": derive_address("PU"), "_tokenIds": ["2", "1"]},
    )
    assert references_token(order, 2)
    assert not references_token(order, 3)
