"""Command-line interface: a thin client over the workspace operations.

Exit codes: 0 on success, 1 when a command fails (a colimit does not
exist, an assertion fires, ...), 2 when input cannot even be parsed or
validated (bad files, bad flags, version mismatches).
"""

from __future__ import annotations

import sys
from pathlib import Path

import click

from . import workspace as ws
from .diagram import slice_diagram
from .errors import (
    EngineError,
    ParseError,
    ReplayFailed,
    ValidationFailed,
    VersionUnsupported,
)
from .homotopy import ContractionDirective, ExpansionDirective
from .monotone import Bias, DeltaDiagram, delta_colimit
from .catcore import DiagramShape
from .errors import NoColimit
from .oracles import delta_colimit_oracle, enumerate_monotones
from .render import emit_svg, emit_text, project

PARSE_ERRORS = (ParseError, VersionUnsupported, ValidationFailed)


def _fail(e: EngineError) -> "NoReturn":
    click.echo(f"error: {e.reason}: {e}", err=True)
    sys.exit(2 if isinstance(e, PARSE_ERRORS) else 1)


def _load(path: str) -> ws.Workspace:
    try:
        return ws.load(Path(path).read_bytes())
    except FileNotFoundError:
        click.echo(f"error: no such file {path}", err=True)
        sys.exit(2)
    except EngineError as e:
        _fail(e)


def _store(path: str, w: ws.Workspace) -> None:
    Path(path).write_bytes(ws.save(w))


@click.group()
def main():
    """Build and manipulate zigzag diagrams."""


@main.command()
@click.option("--workspace", "workspace_path", required=True, type=click.Path())
def validate(workspace_path):
    """Load a workspace file and check all invariants, including the log."""
    w = _load(workspace_path)
    problems = ws.verify_log(w)
    if problems:
        for index, problem in problems:
            click.echo(f"log entry {index}: {problem}", err=True)
        sys.exit(2)
    click.echo(f"ok {ws.state_hash(w)}")


@main.command()
@click.option("--workspace", "workspace_path", required=True, type=click.Path())
@click.option("--out", "out_path", type=click.Path(), default=None)
@click.argument("script", type=click.Path(exists=True))
def replay(workspace_path, out_path, script):
    """Apply a proof script to a workspace and write the result back."""
    if Path(workspace_path).exists():
        w = _load(workspace_path)
    else:
        w = ws.Workspace()
    try:
        w = ws.replay(w, Path(script).read_text("utf-8"), Path(script).parent)
    except ReplayFailed as e:
        click.echo(f"error at line {e.line}: {e.inner.reason}: {e.inner}", err=True)
        sys.exit(2 if isinstance(e.inner, PARSE_ERRORS) else 1)
    _store(out_path or workspace_path, w)
    click.echo(f"ok {ws.state_hash(w)}")


@main.command()
@click.option("--workspace", "workspace_path", required=True, type=click.Path())
@click.argument("name")
@click.option("--path", "path_text", default="")
@click.option("--window", "window_text", required=True)
@click.option("--bias", type=click.Choice(["lower", "higher"]), default=None)
def contract(workspace_path, name, path_text, window_text, bias):
    """Contract a window of regular heights at a path of a named diagram."""
    w = _load(workspace_path)
    if name not in w.diagrams:
        click.echo(f"error: no diagram {name}", err=True)
        sys.exit(2)
    try:
        directive = ContractionDirective(
            ws.parse_path(path_text),
            ws.parse_window(window_text),
            ws.BIASES.get(bias or "", Bias.NONE),
        )
        w = ws.contract_command(w, name, directive)
    except EngineError as e:
        _fail(e)
    _store(workspace_path, w)
    click.echo(f"ok {ws.state_hash(w)}")


@main.command()
@click.option("--workspace", "workspace_path", required=True, type=click.Path())
@click.argument("name")
@click.option("--path", "path_text", default="")
@click.option("--height", type=int, required=True)
@click.option("--split", "split_text", required=True)
@click.option("--first", type=click.Choice(["lower", "higher"]), default="lower")
def expand(workspace_path, name, path_text, height, split_text, first):
    """Split a singular height of a named diagram into two."""
    w = _load(workspace_path)
    if name not in w.diagrams:
        click.echo(f"error: no diagram {name}", err=True)
        sys.exit(2)
    try:
        directive = ExpansionDirective(
            ws.parse_path(path_text),
            height,
            ws.parse_split(split_text),
            ws.BIASES[first],
        )
        w = ws.expand_command(w, name, directive)
    except EngineError as e:
        _fail(e)
    _store(workspace_path, w)
    click.echo(f"ok {ws.state_hash(w)}")


@main.command("slice")
@click.option("--workspace", "workspace_path", required=True, type=click.Path())
@click.argument("name")
@click.option("--path", "path_text", default="")
def slice_cmd(workspace_path, name, path_text):
    """Print the textual projection of a slice of a named diagram."""
    w = _load(workspace_path)
    if name not in w.diagrams:
        click.echo(f"error: no diagram {name}", err=True)
        sys.exit(2)
    try:
        part = slice_diagram(w.diagrams[name], ws.parse_path(path_text))
    except EngineError as e:
        _fail(e)
    click.echo(emit_text(project(w.signature, part)))


@main.command()
@click.option("--workspace", "workspace_path", required=True, type=click.Path())
@click.argument("name")
@click.option("--slice", "path_text", default="")
@click.option("--out", "out_path", required=True, type=click.Path())
def render(workspace_path, name, path_text, out_path):
    """Write the SVG projection of a slice of a named diagram."""
    w = _load(workspace_path)
    if name not in w.diagrams:
        click.echo(f"error: no diagram {name}", err=True)
        sys.exit(2)
    try:
        part = slice_diagram(w.diagrams[name], ws.parse_path(path_text))
    except EngineError as e:
        _fail(e)
    Path(out_path).write_bytes(emit_svg(project(w.signature, part)))
    click.echo(f"wrote {out_path}")


@main.command("oracle-check")
@click.option("--workspace", "workspace_path", type=click.Path(), default=None)
@click.option("--max-size", type=int, default=3, show_default=True)
def oracle_check(workspace_path, max_size):
    """Cross-check the singular-height colimit against the independent
    separation oracle on all spans up to a size bound; optionally verify a
    workspace log as well."""
    checked = 0
    for n in range(1, max_size + 1):
        for m in range(1, max_size + 1):
            for k in range(0, max_size + 1):
                for left in enumerate_monotones(k, n):
                    for right in enumerate_monotones(k, m):
                        d = DeltaDiagram(
                            DiagramShape(3, ((1, 0), (1, 2))),
                            (n, k, m),
                            (left, right),
                        )
                        try:
                            got = delta_colimit(d)
                        except NoColimit:
                            got = None
                        expected = delta_colimit_oracle(d)
                        if got != expected:
                            click.echo(f"mismatch on {d}", err=True)
                            sys.exit(1)
                        checked += 1
    click.echo(f"ok: {checked} spans agree with the oracle")
    if workspace_path:
        w = _load(workspace_path)
        problems = ws.verify_log(w)
        if problems:
            for index, problem in problems:
                click.echo(f"log entry {index}: {problem}", err=True)
            sys.exit(1)
        click.echo(f"ok: log of {workspace_path} replays to its hashes")


@main.command()
@click.option("--workspace", "workspace_path", type=click.Path(), default=None)
@click.option("--serve-addr", default="127.0.0.1:8000", show_default=True)
def serve(workspace_path, serve_addr):
    """Run the HTTP service, optionally preloaded with a workspace file."""
    import uvicorn

    from .service import WorkspaceStore, create_app

    store = WorkspaceStore()
    if workspace_path:
        wid = store.create(_load(workspace_path))
        click.echo(f"loaded {workspace_path} as {wid}")
    host, _, port = serve_addr.partition(":")
    uvicorn.run(create_app(store), host=host, port=int(port or "8000"))


if __name__ == "__main__":
    main()
