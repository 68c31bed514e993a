"""Command-line client for the ledger service.

The CLI is a thin client: it reads and writes files, sends requests to
the service, and maps outcomes to exit codes (0 success, 1 failed
assertion or engine error, 2 usage/parse error). Without --url it mounts
the service in-process, so no server needs to be running.
"""

import json
import sys
from pathlib import Path

import click
import httpx

from sftlock.scenario import journal_path_for
from sftlock.service import create_app

EXIT_OK = 0
EXIT_RUN_FAILURE = 1
EXIT_USAGE = 2


def make_client(url: str | None) -> httpx.Client:
    if url:
        return httpx.Client(base_url=url, timeout=60.0)
    transport = httpx.ASGITransport(app=create_app())
    return httpx.Client(transport=transport, base_url="http://sftlock.local")


def _read_text(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        click.echo(f"error: cannot read {path}: {exc}", err=True)
        sys.exit(EXIT_USAGE)


def _read_weights(path: str | None) -> dict | None:
    if path is None:
        return None
    try:
        weights = json.loads(_read_text(path))
    except json.JSONDecodeError as exc:
        click.echo(f"error: weights file {path} is not valid JSON: {exc}", err=True)
        sys.exit(EXIT_USAGE)
    if not isinstance(weights, dict):
        click.echo(f"error: weights file {path} must hold an object", err=True)
        sys.exit(EXIT_USAGE)
    return weights


def _service_error(response: httpx.Response) -> None:
    detail = response.json().get("detail", {})
    kind = detail.get("kind", "error") if isinstance(detail, dict) else "error"
    message = detail.get("message", str(detail)) if isinstance(detail, dict) else detail
    click.echo(f"error [{kind}]: {message}", err=True)
    sys.exit(EXIT_USAGE if kind == "scenario" else EXIT_RUN_FAILURE)


@click.group()
@click.option("--url", default=None, help="remote service URL (default: in-process)")
@click.pass_context
def main(ctx, url):
    """Drive spectrum-token ledger scenarios and inspect their journals."""
    ctx.ensure_object(dict)
    ctx.obj["url"] = url


@main.command()
@click.argument("scenario_path", type=click.Path())
@click.option("--json", "as_json", is_flag=True, help="machine-readable output")
@click.option("--weights", "weights_path", type=click.Path(), default=None,
              help="JSON file overriding cost weights")
@click.option("--journal", "journal_out", type=click.Path(), default=None,
              help="journal output path (default: beside the scenario)")
@click.pass_context
def run(ctx, scenario_path, as_json, weights_path, journal_out):
    """Run a scenario file and write its journal beside it."""
    text = _read_text(scenario_path)
    weights = _read_weights(weights_path)
    with make_client(ctx.obj["url"]) as client:
        response = client.post(
            "/scenarios/run", json={"scenario": text, "weights": weights}
        )
    if response.status_code != 200:
        _service_error(response)
    payload = response.json()
    out_path = Path(journal_out) if journal_out else journal_path_for(scenario_path)
    out_path.write_text(
        "".join(line + "\n" for line in payload["journal"]), encoding="utf-8"
    )
    if as_json:
        payload["journal_path"] = str(out_path)
        click.echo(json.dumps(payload, indent=2))
    else:
        click.echo(payload["summary"])
        click.echo(f"journal:  {out_path}")
    sys.exit(EXIT_OK if payload["ok"] else EXIT_RUN_FAILURE)


@main.command()
@click.argument("journal_path", type=click.Path())
@click.argument("token_id", type=int)
@click.option("--json", "as_json", is_flag=True, help="machine-readable output")
@click.pass_context
def trace(ctx, journal_path, token_id, as_json):
    """Print a token's event lifecycle from a journal file."""
    lines = _read_text(journal_path).splitlines()
    with make_client(ctx.obj["url"]) as client:
        response = client.post(
            "/journals/trace", json={"journal": lines, "token_id": token_id}
        )
    if response.status_code != 200:
        _service_error(response)
    events = response.json()["events"]
    if as_json:
        click.echo(json.dumps(events, indent=2))
    else:
        for event in events:
            args = ", ".join(f"{k}={v}" for k, v in event["args"].items())
            click.echo(f"{event['sequence']:>4}  {event['kind']:<16} {args}")
    sys.exit(EXIT_OK)


@main.command()
@click.argument("scenario_path", type=click.Path())
@click.option("--json", "as_json", is_flag=True, help="machine-readable output")
@click.option("--weights", "weights_path", type=click.Path(), default=None,
              help="JSON file overriding cost weights")
@click.pass_context
def compare(ctx, scenario_path, as_json, weights_path):
    """Run the lock engine and the mint/burn baseline side by side."""
    text = _read_text(scenario_path)
    weights = _read_weights(weights_path)
    with make_client(ctx.obj["url"]) as client:
        response = client.post(
            "/scenarios/compare", json={"scenario": text, "weights": weights}
        )
    if response.status_code != 200:
        _service_error(response)
    payload = response.json()
    if as_json:
        click.echo(json.dumps(payload["report"], indent=2))
    else:
        click.echo(payload["text"])
    sys.exit(EXIT_OK if payload["ok"] else EXIT_RUN_FAILURE)


@main.command()
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", default=8000, show_default=True, type=int)
def serve(host, port):
    """Start the ledger service."""
    import uvicorn

    uvicorn.run(create_app(), host=host, port=port)


if __name__ == "__main__":
    main()
