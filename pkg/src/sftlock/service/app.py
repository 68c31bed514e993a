"""FastAPI service wrapping the ledger engine.

Stateless endpoints run whole scenario files, compare the two models, and
trace journals. Session endpoints keep a live engine per session and
apply one command at a time under a per-session lock, preserving the
single-writer command stream.
"""

import threading
import uuid

from fastapi import FastAPI, HTTPException

import sftlock
from sftlock.addresses import derive_address, parse_address
from sftlock.compare import run_compare
from sftlock.costs import CostLedger, resolve_weights
from sftlock.engine import LedgerEngine
from sftlock.errors import (
    AssertionFailure,
    InternalConsistencyError,
    LedgerError,
    NotFoundError,
    ReplayError,
    ScenarioError,
)
from sftlock.journal import Journal
from sftlock.scenario import _execute, _parse_step, parse_scenario, run_scenario
from sftlock.service import schemas


class Session:
    def __init__(self, actors: dict[str, str], weights: dict | None):
        self.actors = actors
        self.weights = resolve_weights(weights)
        self.engine = LedgerEngine(
            sma=actors.get("SMA", derive_address("SMA")), costs=CostLedger()
        )
        self.lock = threading.Lock()
        self.commands_seen = 0


def _event_model(event) -> schemas.EventModel:
    return schemas.EventModel(
        sequence=event.sequence, emitter=event.emitter, kind=event.kind, args=event.args
    )


def create_app() -> FastAPI:
    app = FastAPI(title="sftlock ledger service", version=sftlock.__version__)
    sessions: dict[str, Session] = {}

    def get_session(session_id: str) -> Session:
        session = sessions.get(session_id)
        if session is None:
            raise HTTPException(status_code=404, detail=f"no session {session_id}")
        return session

    @app.get("/health", response_model=schemas.HealthResponse)
    def health():
        return schemas.HealthResponse(status="ok", version=sftlock.__version__)

    @app.post("/scenarios/run", response_model=schemas.RunResponse)
    def scenarios_run(request: schemas.RunRequest):
        try:
            scenario = parse_scenario(request.scenario)
            result = run_scenario(scenario, weights_override=request.weights)
        except (ScenarioError, LedgerError) as exc:
            raise HTTPException(
                status_code=400,
                detail={"kind": getattr(exc, "kind", "scenario"), "message": str(exc)},
            ) from exc
        failure = None
        if result.failure:
            failure = schemas.ErrorInfo(
                kind=result.failure.kind,
                message=result.failure.message,
                step_index=result.failure.index,
            )
        return schemas.RunResponse(
            ok=result.ok,
            scenario=scenario.name,
            steps_total=len(scenario.steps),
            steps_executed=result.steps_executed,
            events=len(result.engine.journal),
            digest=result.engine.digest(),
            failure=failure,
            cost=result.cost_report.to_dict(),
            journal=result.journal_lines(),
            summary=result.summary_text(),
        )

    @app.post("/scenarios/compare", response_model=schemas.CompareResponse)
    def scenarios_compare(request: schemas.CompareRequest):
        try:
            scenario = parse_scenario(request.scenario)
            result = run_compare(scenario, weights_override=request.weights)
        except (ScenarioError, LedgerError) as exc:
            raise HTTPException(
                status_code=400,
                detail={"kind": getattr(exc, "kind", "scenario"), "message": str(exc)},
            ) from exc
        return schemas.CompareResponse(
            ok=result.ok,
            scenario=scenario.name,
            report=result.to_dict(),
            text=result.render_text(),
        )

    @app.post("/journals/trace", response_model=schemas.TraceResponse)
    def journals_trace(request: schemas.TraceRequest):
        try:
            journal = Journal.from_lines(request.journal)
        except (ReplayError, InternalConsistencyError) as exc:
            raise HTTPException(
                status_code=400,
                detail={"kind": "replay", "message": str(exc)},
            ) from exc
        from sftlock.engine import trace_events

        events = trace_events(journal, request.token_id)
        return schemas.TraceResponse(
            token_id=request.token_id, events=[_event_model(e) for e in events]
        )

    @app.post("/sessions", response_model=schemas.SessionCreateResponse, status_code=201)
    def sessions_create(request: schemas.SessionCreateRequest):
        actors = {}
        for role, value in request.actors.items():
            try:
                actors[role] = (
                    derive_address(role) if value == "auto" else parse_address(value)
                )
            except ValueError as exc:
                raise HTTPException(
                    status_code=400,
                    detail={"kind": "scenario", "message": f"actor {role!r}: {exc}"},
                ) from exc
        try:
            session = Session(actors, request.weights)
        except LedgerError as exc:
            raise HTTPException(
                status_code=400, detail={"kind": exc.kind, "message": str(exc)}
            ) from exc
        session_id = uuid.uuid4().hex
        sessions[session_id] = session
        return schemas.SessionCreateResponse(session_id=session_id, actors=actors)

    @app.post("/sessions/{session_id}/commands", response_model=schemas.CommandResponse)
    def sessions_command(session_id: str, request: schemas.CommandRequest):
        session = get_session(session_id)
        with session.lock:
            try:
                step = _parse_step(
                    request.command, session.commands_seen, 0, session.actors
                )
            except ScenarioError as exc:
                raise HTTPException(
                    status_code=400, detail={"kind": "scenario", "message": str(exc)}
                ) from exc
            session.commands_seen += 1
            before = len(session.engine.journal)
            try:
                _execute(session.engine, session.actors, step)
            except (LedgerError, AssertionFailure, InternalConsistencyError) as exc:
                return schemas.CommandResponse(
                    ok=False,
                    events=[],
                    error=schemas.ErrorInfo(
                        kind=getattr(exc, "kind", "internal-consistency"),
                        message=str(exc),
                        step_index=step.index,
                    ),
                )
            emitted = session.engine.journal.entries[before:]
        return schemas.CommandResponse(
            ok=True, events=[_event_model(e) for e in emitted]
        )

    @app.get("/sessions/{session_id}/state", response_model=schemas.SessionStateResponse)
    def sessions_state(session_id: str):
        session = get_session(session_id)
        with session.lock:
            return schemas.SessionStateResponse(
                session_id=session_id,
                digest=session.engine.digest(),
                events=len(session.engine.journal),
                state=session.engine.canonical_state(),
                cost_totals=session.engine.costs.totals(session.weights),
            )

    @app.get("/sessions/{session_id}/journal", response_model=schemas.JournalResponse)
    def sessions_journal(session_id: str):
        session = get_session(session_id)
        with session.lock:
            return schemas.JournalResponse(
                session_id=session_id, lines=session.engine.journal.lines()
            )

    @app.get(
        "/sessions/{session_id}/trace/{token_id}", response_model=schemas.TraceResponse
    )
    def sessions_trace(session_id: str, token_id: int):
        session = get_session(session_id)
        with session.lock:
            events = session.engine.trace(token_id)
        return schemas.TraceResponse(
            token_id=token_id, events=[_event_model(e) for e in events]
        )

    @app.get(
        "/sessions/{session_id}/rentals/{token_id}",
        response_model=schemas.UserOfResponse,
    )
    def sessions_user_of(session_id: str, token_id: int, now: int):
        session = get_session(session_id)
        with session.lock:
            try:
                user = session.engine.user_of(token_id, now)
            except NotFoundError as exc:
                raise HTTPException(
                    status_code=404, detail={"kind": exc.kind, "message": str(exc)}
                ) from exc
        return schemas.UserOfResponse(token_id=token_id, now=now, user=user)

    @app.delete("/sessions/{session_id}", status_code=204)
    def sessions_delete(session_id: str):
        get_session(session_id)
        del sessions[session_id]

    return app
