"""Request/response models for the ledger service."""

from pydantic import BaseModel, Field


class HealthResponse(BaseModel):
    status: str
    version: str


class ErrorInfo(BaseModel):
    kind: str
    message: str
    step_index: int | None = None


class EventModel(BaseModel):
    sequence: int
    emitter: str
    kind: str
    args: dict


class RunRequest(BaseModel):
    scenario: str = Field(description="scenario file text (line-oriented JSON)")
    weights: dict[str, int] | None = None


class RunResponse(BaseModel):
    ok: bool
    scenario: str
    steps_total: int
    steps_executed: int
    events: int
    digest: str
    failure: ErrorInfo | None = None
    cost: dict
    journal: list[str]
    summary: str


class CompareRequest(BaseModel):
    scenario: str
    weights: dict[str, int] | None = None


class CompareResponse(BaseModel):
    ok: bool
    scenario: str
    report: dict
    text: str


class TraceRequest(BaseModel):
    journal: list[str] = Field(description="journal lines, one event per line")
    token_id: int


class TraceResponse(BaseModel):
    token_id: int
    events: list[EventModel]


class SessionCreateRequest(BaseModel):
    actors: dict[str, str] = Field(
        default_factory=dict,
        description="role -> 0x-hex address, or 'auto' to derive from the role",
    )
    weights: dict[str, int] | None = None


class SessionCreateResponse(BaseModel):
    session_id: str
    actors: dict[str, str]


class CommandRequest(BaseModel):
    command: dict = Field(description="one scenario-step object (op + fields)")


class CommandResponse(BaseModel):
    ok: bool
    events: list[EventModel]
    error: ErrorInfo | None = None


class SessionStateResponse(BaseModel):
    session_id: str
    digest: str
    events: int
    state: dict
    cost_totals: dict[str, int]


class JournalResponse(BaseModel):
    session_id: str
    lines: list[str]


class UserOfResponse(BaseModel):
    token_id: int
    now: int
    user: str
