"""Command-line interface.

    qirk ingest <dump.jsonl> --out <store>
    qirk index --store <store> [--out <index>]
    qirk ask (--ir <text> | --nl <text>) [--k N] [--json]
    qirk compile --ir <text>
    qirk serve [--host H] [--port P]

Store/index paths come from flags, the config file (--config or
QIRK_CONFIG), or are built on the fly from the store.  Exit codes: 0 on
success, 2 on user error (bad input, bad config), 1 on internal error.
"""

from __future__ import annotations

import json
import sys

import click

from .config import QirkConfig, load_config
from .errors import ConfigError, MalformedLine, QirkError
from .index import SemanticIndex, build_index
from .pipeline import AskEngine, StageError, build_and_save_index, make_provider
from .store import ingest_dump

USER_ERROR = 2
INTERNAL_ERROR = 1


def _fail(message: str, code: int = USER_ERROR):
    click.echo(f"error: {message}", err=True)
    sys.exit(code)


def _load_engine(config_path, store, index) -> AskEngine:
    try:
        config = load_config(config_path)
        if store:
            config.store = store
        if index:
            config.index = index
        if not config.store:
            _fail("no store given; pass --store or set it in the config")
        return AskEngine.from_config(config)
    except (ConfigError, MalformedLine, FileNotFoundError, ValueError) as exc:
        _fail(str(exc))


@click.group()
def main():
    """Question answering over a knowledge graph."""


@main.command()
@click.argument("dump", type=click.Path(exists=True, dir_okay=False))
@click.option("--out", required=True, type=click.Path(dir_okay=False),
              help="Path for the normalized store file.")
def ingest(dump, out):
    """Validate a JSONL dump and write the normalized store."""
    try:
        store, report = ingest_dump(dump)
    except (MalformedLine, OSError) as exc:
        _fail(str(exc))
    store.save(out)
    click.echo(f"ingested {report.entities} entities, {report.properties} "
               f"properties, {report.claims} claims "
               f"({report.qualifiers} qualifiers)")
    if report.rejected:
        click.echo(f"rejected {len(report.rejected)} lines:", err=True)
        for lineno, reason in report.rejected[:20]:
            click.echo(f"  line {lineno}: {reason}", err=True)
    click.echo(f"store written to {out}")


@main.command()
@click.option("--store", required=True, type=click.Path(exists=True, dir_okay=False))
@click.option("--out", type=click.Path(dir_okay=False),
              help="Index file path (default: <store>.idx).")
@click.option("--config", "config_path", type=click.Path(exists=True))
def index(store, out, config_path):
    """Build the vector index for a store."""
    out = out or f"{store}.idx"
    try:
        config = load_config(config_path)
        kg, report = ingest_dump(store)
        if report.rejected:
            click.echo(f"warning: {len(report.rejected)} lines rejected",
                       err=True)
        count = build_and_save_index(kg, config, out)
    except QirkError as exc:
        _fail(str(exc))
    click.echo(f"indexed {count} vectors to {out}")


def _print_groups(response):
    groups = response.get("groups", [])
    if not groups:
        click.echo("no answers")
        return
    for i, group in enumerate(groups, start=1):
        mapping = ", ".join(
            f"{a['keyword']} -> {a['label']} ({a['id']}, {a['score']:.2f})"
            for a in group["assignment"])
        click.echo(f"group {i}  confidence {group['confidence']:.4f}")
        click.echo(f"  mapping: {mapping}")
        for answer in group["answers"]:
            cells = []
            for value in answer["values"]:
                if value["type"] == "entity_id":
                    cells.append(f"{value['label']} ({value['value']})")
                else:
                    cells.append(str(value["value"]))
            click.echo("  " + " | ".join(cells))


def _stage_error(exc: StageError):
    where = ""
    if exc.position:
        where = f" (line {exc.position['line']}, column {exc.position['col']})"
    _fail(f"{exc.stage}: {exc}{where}")


@main.command()
@click.option("--ir", "ir_text", help="Query in the intermediate representation.")
@click.option("--nl", "nl_text", help="Natural-language question.")
@click.option("--k", type=int, default=None, help="Candidates per keyword.")
@click.option("--json", "as_json", is_flag=True, help="Print the full response JSON.")
@click.option("--store", type=click.Path(exists=True, dir_okay=False))
@click.option("--index", type=click.Path(exists=True, dir_okay=False))
@click.option("--config", "config_path", type=click.Path(exists=True))
def ask(ir_text, nl_text, k, as_json, store, index, config_path):
    """Answer a question (IR or natural language)."""
    if (ir_text is None) == (nl_text is None):
        _fail("provide exactly one of --ir or --nl")
    engine = _load_engine(config_path, store, index)
    try:
        response = engine.ask(ir=ir_text, nl=nl_text, k=k)
    except StageError as exc:
        _stage_error(exc)
    if as_json:
        click.echo(json.dumps(response, indent=2))
        return
    if "question" in response:
        click.echo(f"ir: {response['ir']}")
    _print_groups(response)


@main.command()
@click.option("--ir", "ir_text", required=True)
@click.option("--k", type=int, default=None)
@click.option("--store", type=click.Path(exists=True, dir_okay=False))
@click.option("--index", type=click.Path(exists=True, dir_okay=False))
@click.option("--config", "config_path", type=click.Path(exists=True))
def compile(ir_text, k, store, index, config_path):
    """Print the generated SPARQL and SQL for a query without executing it."""
    engine = _load_engine(config_path, store, index)
    try:
        response = engine.compile_only(ir_text, k=k)
    except StageError as exc:
        _stage_error(exc)
    click.echo("-- SPARQL")
    click.echo(response["sparql"])
    click.echo("-- SQL")
    click.echo(response["sql"])


@main.command()
@click.option("--host", default="127.0.0.1")
@click.option("--port", default=8764, type=int)
@click.option("--store", type=click.Path(exists=True, dir_okay=False))
@click.option("--index", type=click.Path(exists=True, dir_okay=False))
@click.option("--config", "config_path", type=click.Path(exists=True))
@click.option("--static", "static_dir", type=click.Path(file_okay=False),
              help="Directory with the built web UI (default: frontend/dist).")
def serve(host, port, store, index, config_path, static_dir):
    """Start the HTTP service."""
    import uvicorn

    from .service import create_app

    engine = _load_engine(config_path, store, index)
    if static_dir is None:
        from pathlib import Path

        candidate = Path("frontend/dist")
        static_dir = str(candidate) if candidate.is_dir() else None
    app = create_app(engine, static_dir=static_dir)
    click.echo(f"serving on http://{host}:{port}")
    uvicorn.run(app, host=host, port=port, log_level="warning")


if __name__ == "__main__":
    main()
